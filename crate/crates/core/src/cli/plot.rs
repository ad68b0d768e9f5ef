//! Companion gnuplot scripts for the reproduced figure data. They are only written out,
//! never run.

use super::table::column;
use crate::optimize::figures::{Figure, FIG4_ENERGIES, FIG5_TEMPERATURES, PANEL_LAMBDAS};

fn preamble(out: &mut String, title: &str, png: &str) {
    out.push_str(&format!(
        "# {title}\n\
         set datafile separator ','\n\
         set datafile missing ''\n\
         set terminal pngcairo size 1200,400\n\
         set output '{png}'\n"
    ));
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Selects rows whose column `col` equals the loop variable `var`.
fn select(col: usize, var: &str, y: usize) -> String {
    format!("(abs(${col} - {var}) < 1e-12 ? ${y} : NaN)")
}

pub fn gnuplot_script(fig: Figure) -> String {
    let c = column;
    let mut s = String::new();
    match fig {
        Figure::Fig2 => {
            preamble(
                &mut s,
                "maximal negativity and optimal couplings (eps_m = 1)",
                "fig2.png",
            );
            s.push_str("set multiplot layout 1,3\nset view map\nset xlabel 'eps1'\nset ylabel 'eps2'\n");
            for (name, title) in [
                ("negativity", "N_max"),
                ("lam1", "lambda_1 opt"),
                ("lam2", "lambda_2 opt"),
            ] {
                s.push_str(&format!(
                    "set title '{title}'\nsplot 'fig2.csv' skip 2 using {}:{}:{} with points pointtype 5 pointsize 0.6 palette notitle\n",
                    c("eps1"),
                    c("eps2"),
                    c(name)
                ));
            }
            s.push_str("unset multiplot\n");
        }
        Figure::Fig2Sup => {
            preamble(
                &mut s,
                "negativity at fixed lambda_1 = lambda_2 (omega = 1)",
                "fig2sup.png",
            );
            s.push_str("set multiplot layout 1,3\nset view map\nset xlabel 'eps1'\nset ylabel 'eps2'\n");
            for lam in PANEL_LAMBDAS {
                s.push_str(&format!(
                    "set title 'lambda = {lam}'\nsplot 'fig2sup.csv' skip 2 using {}:{}:{} with points pointtype 5 pointsize 0.6 palette notitle\n",
                    c("eps1"),
                    c("eps2"),
                    select(c("lam1"), &lam.to_string(), c("negativity"))
                ));
            }
            s.push_str("unset multiplot\n");
        }
        Figure::Fig4 => {
            preamble(&mut s, "negativity against coupling (omega = 1)", "fig4.png");
            s.push_str(&format!(
                "set xlabel 'lambda'\nset ylabel 'N'\n\
                 plot for [e in '{}'] 'fig4.csv' skip 2 using {}:{} with lines title 'eps = '.e\n",
                join(&FIG4_ENERGIES),
                c("lam1"),
                select(c("eps1"), "e", c("negativity"))
            ));
        }
        Figure::Fig5 => {
            preamble(&mut s, "negativity and mutual information (omega = 1)", "fig5.png");
            s.push_str("set multiplot layout 1,3\n");
            s.push_str(&format!(
                "set title 'negativity'\nset xlabel 'eps1 = eps2'\nset ylabel 'N'\n\
                 plot for [l in '{}'] 'fig5_negativity.csv' skip 2 using {}:{} with lines title 'lambda = '.l\n",
                join(&PANEL_LAMBDAS),
                c("eps1"),
                select(c("lam1"), "l", c("negativity"))
            ));
            // special-set rows store lam1 = sqrt(2) lambda and eps_m = 2 omega
            for t in FIG5_TEMPERATURES {
                s.push_str(&format!(
                    "set title 'I at T = {t}'\nset view map\nset xlabel 'lambda'\nset ylabel 'omega'\n\
                     splot 'fig5_qmi.csv' skip 2 using (${}/sqrt(2)):(${}/2):{} with points pointtype 5 pointsize 0.6 palette notitle\n\
                     unset view\n",
                    c("lam1"),
                    c("eps_m"),
                    select(c("temperature"), &t.to_string(), c("qmi"))
                ));
            }
            s.push_str("unset multiplot\n");
        }
    }
    s
}
