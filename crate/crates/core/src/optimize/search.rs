//! Derivative-free maximizers on boxes: golden-section in one dimension and Nelder–Mead
//! in two. Both are deterministic and count objective evaluations.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum1d {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping once the bracket is
/// narrower than `tol`. The returned point is the best one evaluated, endpoints included.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Maximum1d {
    assert!(lo <= hi && tol > 0.0);
    let (mut a, mut b) = (lo, hi);
    let mut evaluations = 0;
    let mut eval = |x: f64, n: &mut usize| {
        *n += 1;
        f(x)
    };
    let mut best = (lo, eval(lo, &mut evaluations));
    let fb = eval(hi, &mut evaluations);
    if fb > best.1 {
        best = (hi, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c, &mut evaluations);
    let mut fd = eval(d, &mut evaluations);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c, &mut evaluations);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d, &mut evaluations);
        }
        for (x, v) in [(c, fc), (d, fd)] {
            if v > best.1 {
                best = (x, v);
            }
        }
    }
    Maximum1d {
        x: best.0,
        value: best.1,
        evaluations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum2d {
    pub x: [f64; 2],
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial right-angled simplex.
    pub initial_step: f64,
    /// Stop once the largest vertex distance from the best vertex is below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

fn clamp_box(x: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> [f64; 2] {
    [x[0].clamp(lo[0], hi[0]), x[1].clamp(lo[1], hi[1])]
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Nelder–Mead maximization of `f` on the box `[lo, hi]`. Trial points are projected
/// onto the box before evaluation. Coefficients are the standard 1, 2, ½, ½.
pub fn nelder_mead_max(
    mut f: impl FnMut([f64; 2]) -> f64,
    start: [f64; 2],
    lo: [f64; 2],
    hi: [f64; 2],
    opts: NelderMeadOptions,
) -> Maximum2d {
    let mut evaluations = 0;
    let mut eval = |x: [f64; 2], n: &mut usize| {
        *n += 1;
        f(x)
    };
    let x0 = clamp_box(start, lo, hi);
    let mut simplex: Vec<([f64; 2], f64)> = Vec::with_capacity(3);
    simplex.push((x0, eval(x0, &mut evaluations)));
    for axis in 0..2 {
        let mut x = x0;
        // step inward when the start sits on the upper face
        x[axis] = if x0[axis] + opts.initial_step <= hi[axis] {
            x0[axis] + opts.initial_step
        } else {
            x0[axis] - opts.initial_step
        };
        let x = clamp_box(x, lo, hi);
        simplex.push((x, eval(x, &mut evaluations)));
    }

    let mut iterations = 0;
    loop {
        // best first; stable on ties
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let best = simplex[0].0;
        let diameter = simplex[1..].iter().map(|v| dist(v.0, best)).fold(0.0, f64::max);
        if diameter < opts.tolerance || iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;

        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let (worst, f_worst) = simplex[2];
        let reflected = clamp_box(lerp(centroid, worst, -1.0), lo, hi);
        let f_r = eval(reflected, &mut evaluations);

        if f_r > simplex[0].1 {
            let expanded = clamp_box(lerp(centroid, worst, -2.0), lo, hi);
            let f_e = eval(expanded, &mut evaluations);
            simplex[2] = if f_e > f_r { (expanded, f_e) } else { (reflected, f_r) };
            continue;
        }
        if f_r > simplex[1].1 {
            simplex[2] = (reflected, f_r);
            continue;
        }
        let (contracted, f_c) = if f_r > f_worst {
            let x = clamp_box(lerp(centroid, reflected, 0.5), lo, hi);
            (x, eval(x, &mut evaluations))
        } else {
            let x = clamp_box(lerp(centroid, worst, 0.5), lo, hi);
            (x, eval(x, &mut evaluations))
        };
        if f_c > f_worst.max(f_r) {
            simplex[2] = (contracted, f_c);
            continue;
        }
        // shrink towards the best vertex
        for vertex in simplex.iter_mut().skip(1) {
            let x = lerp(best, vertex.0, 0.5);
            *vertex = (x, eval(x, &mut evaluations));
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    Maximum2d {
        x: simplex[0].0,
        value: simplex[0].1,
        evaluations,
        iterations,
    }
}
