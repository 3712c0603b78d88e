use rayon::prelude::*;

use super::config::{Command, RunConfig, SweepSpec};
use super::csv::OutputTable;
use super::CliError;
use crate::field::FieldConfig;
use crate::gamow::{bilinear_pairing, gamow_eigenvalue, pairing_contour, Branch, GamowMode};
use crate::numerics::QuadratureSpec;
use crate::propagators::{
    onshell_from_proper_time, onshell_green_momentum, proper_time_cutoff, BoundaryCondition,
    MomentumPoint,
};
use crate::proper_time::{
    efflag_imag_quadrature, efflag_real_renormalized, kernel_diag, pair_rate_residues,
};
use crate::semiclassics::{
    integrate_trajectory, sauter_rate, turning_points, wkb_exponent, wkb_exponent_closed_form,
    TrajectoryState, TunnelingSetup,
};

const MAX_SUBDIVISIONS: usize = 2000;

struct Common {
    field: FieldConfig<f64>,
    spec: QuadratureSpec<f64>,
}

fn common(cfg: &RunConfig) -> Result<Common, CliError> {
    let chi = cfg.required_real("chi")?;
    if chi < 0.0 {
        return Err(CliError::Config(format!(
            "chi must be non-negative, got {chi}"
        )));
    }
    let field = FieldConfig::from_chi(chi, cfg.real("m", 1.0))?;
    let spec = QuadratureSpec::new(
        cfg.real("rel_tol", 1e-10),
        cfg.real("abs_tol", 1e-12),
        MAX_SUBDIVISIONS,
    )?;
    Ok(Common { field, spec })
}

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Evaluates one command into its table. Nothing is written here.
pub fn run_command(cfg: &RunConfig) -> Result<OutputTable, CliError> {
    let Common { field, spec } = common(cfg)?;
    match cfg.command {
        Command::Rate => {
            let mut t = OutputTable::new(&["n", "w_n", "partial_sum"]);
            let series = pair_rate_residues(&field, cfg.count("terms", 5))?;
            for (k, (w, p)) in series.terms().iter().zip(series.partial_sums()).enumerate() {
                t.push(vec![(k + 1) as f64, *w, *p]);
            }
            Ok(t)
        }
        Command::Efflag => {
            let mut t = OutputTable::new(&[
                "chi",
                "re_renorm",
                "im_residue",
                "im_quadrature",
                "agreement",
            ]);
            if !field.has_field() {
                t.push(vec![0.0; 5]);
                return Ok(t);
            }
            let re = efflag_real_renormalized(&field, &spec)?;
            let im_res = 0.5 * pair_rate_residues(&field, cfg.count("terms", 5))?.total();
            let im_quad = 0.5 * efflag_imag_quadrature(&field, &spec)?;
            t.push(vec![
                field.chi(),
                re,
                im_res,
                im_quad,
                (im_res - im_quad).abs() / im_res.abs(),
            ]);
            Ok(t)
        }
        Command::Kernel => {
            let mut t = OutputTable::new(&["s", "re", "im", "free_re", "free_im"]);
            let points = grid(
                cfg.real("s_min", 0.1),
                cfg.real("s_max", 2.0),
                cfg.count("s_points", 20),
            );
            let values = points
                .par_iter()
                .map(|&s| kernel_diag(s, &field).map(|k| (s, k)))
                .collect::<Result<Vec<_>, _>>()?;
            for (s, k) in values {
                let free = -1.0 / (4.0 * std::f64::consts::PI * s).powi(2);
                t.push(vec![s, k.re, k.im, 0.0, free]);
            }
            Ok(t)
        }
        Command::Wkb => {
            let mut t = OutputTable::new(&["p0", "a", "b", "exponent", "closed_form", "rate"]);
            let setup = TunnelingSetup::new(cfg.real("p0", field.mass()), field)?;
            let tp = turning_points(&setup);
            let exponent = wkb_exponent(&setup, &spec)?;
            t.push(vec![
                setup.p0(),
                tp.a,
                tp.b,
                exponent,
                wkb_exponent_closed_form(&field),
                sauter_rate(&field)?,
            ]);
            Ok(t)
        }
        Command::Trajectory => {
            let mut t = OutputTable::new(&["s", "t", "x3", "norm_drift"]);
            let scale = field.mass() / field.strength();
            let start = TrajectoryState::hyperbola_start(&field)?;
            let s_max = cfg.real("s_max", 5.0 * scale);
            let h = cfg.real("h", 1e-3 * scale);
            for (s, st) in integrate_trajectory(&start, (0.0, s_max), h, &field)? {
                t.push(vec![s, st.x[0], st.x[3], st.velocity_norm() - 1.0]);
            }
            Ok(t)
        }
        Command::Spectrum => {
            let mut t = OutputTable::new(&["n", "eigen_im", "pairing_diag_err"]);
            field.require_field("spectrum")?;
            let a = field.strength();
            let n_max = cfg.count("n_max", 40);
            let contour = pairing_contour(Branch::Decaying, a, n_max)?;
            let rows = (0..=n_max)
                .into_par_iter()
                .map(|n| -> crate::Result<Vec<f64>> {
                    let ket = GamowMode::decaying(n, a)?;
                    let bra = GamowMode::growing(n, a)?;
                    let pairing = bilinear_pairing(&bra, &ket, &contour, &spec)?;
                    Ok(vec![
                        n as f64,
                        gamow_eigenvalue(&ket).im,
                        (pairing - 1.0).norm(),
                    ])
                })
                .collect::<Result<Vec<_>, _>>()?;
            for r in rows {
                t.push(r);
            }
            Ok(t)
        }
        Command::Propagator => {
            let mut t =
                OutputTable::new(&["p2_minus_m2", "re_closed", "im_closed", "re_pt", "im_pt"]);
            let m2 = field.mass_squared();
            let eps = cfg.real("eps", 0.05);
            let bc = if cfg.real("bc", 1.0) > 0.0 {
                BoundaryCondition::Feynman
            } else {
                BoundaryCondition::Dyson
            };
            let cutoff = proper_time_cutoff(eps, spec.abs_tol)?;
            let qs = grid(
                cfg.real("q_min", -2.0),
                cfg.real("q_max", 2.0),
                cfg.count("q_points", 9),
            );
            let rows = qs
                .par_iter()
                .map(|&q| -> crate::Result<Vec<f64>> {
                    let p2 = m2 + q;
                    let p = if p2 >= 0.0 {
                        MomentumPoint::at_rest(p2.sqrt())?
                    } else {
                        MomentumPoint::new([0.0, 0.0, 0.0, (-p2).sqrt()])?
                    };
                    let closed = onshell_green_momentum(&p, m2, bc, eps)?;
                    let pt = onshell_from_proper_time(&p, m2, bc, eps, cutoff, &spec)?;
                    Ok(vec![
                        p.square() - m2,
                        closed.re,
                        closed.im,
                        pt.value.re,
                        pt.value.im,
                    ])
                })
                .collect::<Result<Vec<_>, _>>()?;
            for r in rows {
                t.push(r);
            }
            Ok(t)
        }
    }
}

/// Runs every sweep point (concurrently) and stacks the tables in input
/// order, each prefixed with the swept value unless a column already carries
/// it.
pub fn run_sweep(base: &RunConfig, sweep: &SweepSpec) -> Result<OutputTable, CliError> {
    let tables = (0..sweep.values.len())
        .into_par_iter()
        .map(|k| {
            let mut cfg = base.clone();
            cfg.set(&sweep.key, sweep.values[k].clone());
            run_command(&cfg).map(|t| {
                if t.header().contains(&sweep.key) {
                    t
                } else {
                    t.with_leading_column(&sweep.key, sweep.numeric(k))
                }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut iter = tables.into_iter();
    let mut out = iter.next().expect("sweeps are non-empty");
    for t in iter {
        out.extend(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::config::Value;
    use super::*;

    fn config(command: Command, pairs: &[(&str, Value)]) -> RunConfig {
        let mut cfg = RunConfig::new(command);
        for (k, v) in pairs {
            cfg.set(k, v.clone());
        }
        cfg
    }

    #[test]
    fn rate_single_term() {
        let t = run_command(&config(
            Command::Rate,
            &[("chi", Value::Real(1.0)), ("terms", Value::Count(1))],
        ))
        .unwrap();
        assert_eq!(t.rows().len(), 1);
        assert!((t.rows()[0][1] - 1.742_144e-4).abs() < 1e-10);
    }

    #[test]
    fn trajectory_zero_range() {
        let t = run_command(&config(
            Command::Trajectory,
            &[("chi", Value::Real(1.0)), ("s_max", Value::Real(0.0))],
        ))
        .unwrap();
        assert_eq!(t.rows(), &[vec![0.0, 0.0, 1.0, 0.0]]);
    }

    #[test]
    fn efflag_agreement_column() {
        let t = run_command(&config(Command::Efflag, &[("chi", Value::Real(1.0))])).unwrap();
        let row = &t.rows()[0];
        assert!(row[4] < 1e-6);
        assert!((row[2] - row[3]).abs() < 1e-6 * row[2]);
    }

    #[test]
    fn missing_chi() {
        assert!(matches!(
            run_command(&RunConfig::new(Command::Kernel)),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn spectrum_and_propagator() {
        let t = run_command(&config(
            Command::Spectrum,
            &[("chi", Value::Real(1.0)), ("n_max", Value::Count(6))],
        ))
        .unwrap();
        assert_eq!(t.rows().len(), 7);
        assert!(t.rows().iter().all(|r| r[2] < 1e-8));
        assert_eq!(t.rows()[2][1], 5.0);
        let t = run_command(&config(Command::Propagator, &[("chi", Value::Real(1.0))])).unwrap();
        assert_eq!(t.rows().len(), 9);
        for r in t.rows() {
            assert!((r[1] - r[3]).abs() < 1e-8 && (r[2] - r[4]).abs() < 1e-8);
        }
    }

    #[test]
    fn sweep_order_is_input_order() {
        let base = config(Command::Efflag, &[("chi", Value::Real(1.0))]);
        let sweep = SweepSpec::parse("chi=2,0.5,1").unwrap();
        let t = run_sweep(&base, &sweep).unwrap();
        let chis: Vec<f64> = t.rows().iter().map(|r| r[0]).collect();
        assert_eq!(chis, vec![2.0, 0.5, 1.0]);
        assert_eq!(t.header().iter().filter(|h| *h == "chi").count(), 1);
        let base = config(Command::Rate, &[("chi", Value::Real(1.0))]);
        let t = run_sweep(&base, &SweepSpec::parse("terms=1,2").unwrap()).unwrap();
        assert_eq!(t.header()[0], "terms");
        assert_eq!(t.rows().len(), 3);
    }
}
