//! Norm growth of the axis families `F_N`, `G_N`, with an optional control
//! run at another `p` (usually unmixed).
//!
//! CSV columns: `run,n,norm_f,norm_g`.

use brushlab_core::approx::democracy_experiment;
use brushlab_core::MixedNormParams;

use super::norm_params;
use crate::error::CliResult;
use crate::config::Loaded;
use crate::report::{num, Report};

pub fn run(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    let params = norm_params(loaded)?;
    let (axis_n, axis_m) = (c.axis_n.unwrap_or(0), c.axis_m.unwrap_or(1));
    let n_list = c.n_list()?;
    let control = match &c.control_p {
        Some(p) => Some(MixedNormParams::new(p.clone(), params.q, params.s, params.aniso.clone())?),
        None => None,
    };
    let mut report = Report::new(&["run", "n", "norm_f", "norm_g"]);
    let main = democracy_experiment(&params, axis_n, axis_m, &n_list)?;
    for row in &main.rows {
        report.row(vec!["main".into(), row.n.to_string(), num(row.norm_f), num(row.norm_g)]);
    }
    report.near("slope_f", main.slope_f, 1.0 / params.p[axis_n], 0.05);
    report.near("slope_g", main.slope_g, 1.0 / params.p[axis_m], 0.05);
    if let Some(control) = control {
        let ctl = democracy_experiment(&control, axis_n, axis_m, &n_list)?;
        for row in &ctl.rows {
            report.row(vec!["control".into(), row.n.to_string(), num(row.norm_f), num(row.norm_g)]);
        }
        report.metric("control_slope_f", ctl.slope_f);
        report.metric("control_slope_g", ctl.slope_g);
        if control.p[axis_n] == control.p[axis_m] {
            report.at_most("control_slope_gap", (ctl.slope_f - ctl.slope_g).abs(), 0.02);
        } else {
            report.near("control_slope_f", ctl.slope_f, 1.0 / control.p[axis_n], 0.05);
            report.near("control_slope_g", ctl.slope_g, 1.0 / control.p[axis_m], 0.05);
        }
    }
    Ok(report)
}
