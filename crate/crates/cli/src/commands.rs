use std::path::Path;

use logdet_core::estimator::{
    diag_lower_bound, exact_mse, info_lower_bound, risk_upper_bound, rnp_bound, rnp_ratio, sigma,
    tau,
};
use logdet_core::inference::{
    entropy_equality_test, kl_gaussian_exact, logdet_ratio_estimate, qda_oracle_discriminant,
    Discriminant, PluginQda, Population,
};
use logdet_core::matstat::{cholesky_log_det, sample_covariance};
use logdet_core::sim::{
    run_boundary_clt_experiment, run_clt_experiment, run_coverage_experiment, run_mse_experiment,
};
use logdet_core::{
    CltDiagnostics, EntropyEstimate, LogDetEstimate, ModelDims, SampleMatrix, SimConfig,
};
use serde_json::{json, Value};

use crate::args::{Centering, Command, SimKind, SimulateArgs};
use crate::error::CliError;
use crate::input::{read_params, read_points, read_sample};
use crate::report::{num, opt_num, RunReport};

/// `|Δ|` at or below this is reported as a boundary point.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

pub fn run(command: &Command) -> Result<RunReport, CliError> {
    match command {
        Command::Estimate { data, level } => estimate(data, *level),
        Command::Bounds { n, p } => bounds(*n as usize, *p as usize),
        Command::Simulate(args) => simulate(args),
        Command::TestEntropy {
            first,
            second,
            alpha,
        } => test_entropy(first, second, *alpha),
        Command::Kl {
            first,
            second,
            data: false,
            ..
        } => kl(first, second),
        Command::Kl {
            first,
            second,
            data: true,
            level,
        } => kl_from_data(first, second, *level),
        Command::Qda {
            first,
            second,
            points,
            plugin,
        } => qda(first, second, points, *plugin),
    }
}

fn path_value(path: &Path) -> Value {
    Value::from(path.display().to_string())
}

fn interval(lower: f64, upper: f64) -> Value {
    json!({ "lower": num(lower), "upper": num(upper) })
}

fn log_det_value(e: &LogDetEstimate) -> Value {
    json!({
        "t_hat": num(e.t_hat),
        "tau": num(e.tau),
        "sigma": num(e.sigma),
        "ci": interval(e.ci_lower, e.ci_upper),
        "level": num(e.level),
    })
}

fn estimate(data: &Path, level: f64) -> Result<RunReport, CliError> {
    let x = read_sample(data)?;
    let (cov, dims) = sample_covariance(&x)?;
    let est = logdet_core::estimator::estimate_log_det(&x, level)?;
    let entropy = EntropyEstimate::from_log_det(dims.p, est);
    let inputs = json!({ "data": path_value(data), "level": num(level) });
    let results = json!({
        "observations": x.rows(),
        "n": dims.n,
        "p": dims.p,
        "log_det_sample_cov": num(cholesky_log_det(&cov)?),
        "tau": num(est.tau),
        "sigma": num(est.sigma),
        "t_hat": num(est.t_hat),
        "log_det_ci": interval(est.ci_lower, est.ci_upper),
        "h_hat": num(entropy.h_hat),
        "entropy_ci": interval(entropy.ci_lower, entropy.ci_upper),
        "level": num(level),
    });
    Ok(RunReport::new("estimate", inputs, results))
}

fn bounds(n: usize, p: usize) -> Result<RunReport, CliError> {
    let dims = ModelDims::new(n, p)?;
    let inputs = json!({ "n": n, "p": p });
    let results = if p <= n {
        json!({
            "estimable": true,
            "tau": num(tau(dims)?),
            "sigma": num(sigma(dims)?),
            "exact_mse": num(exact_mse(dims)?),
            "risk_upper_bound": num(risk_upper_bound(dims)?),
            "info_lower_bound": num(info_lower_bound(dims)?),
            "diag_lower_bound": num(diag_lower_bound(dims)?),
            "rnp_ratio": num(rnp_ratio(dims)?),
            "rnp_bound": opt_num(rnp_bound(n).ok()),
        })
    } else {
        json!({
            "estimable": false,
            "diag_lower_bound": num(diag_lower_bound(dims)?),
        })
    };
    Ok(RunReport::new("bounds", inputs, results))
}

fn clt_value(d: &CltDiagnostics) -> Value {
    json!({
        "mean": num(d.mean),
        "variance": num(d.variance),
        "skewness": num(d.skewness),
        "ks_stat": num(d.ks_stat),
        "reps": d.reps,
    })
}

fn simulate(args: &SimulateArgs) -> Result<RunReport, CliError> {
    let cfg = SimConfig {
        n: args.n,
        p: args.p,
        reps: args.reps,
        seed: args.seed,
        sampler: args.sampler,
        sigma_spec: args.sigma,
        level: args.level,
    };
    let mut inputs = json!({
        "kind": args.kind.name(),
        "n": args.n,
        "p": args.p,
        "reps": args.reps,
        "seed": args.seed,
        "sampler": args.sampler.to_string(),
        "sigma": args.sigma.to_string(),
        "level": num(args.level),
    });
    if args.kind != SimKind::Clt && args.centering != Centering::Exact {
        return Err(CliError::Config(
            "--centering applies only to `simulate clt`".into(),
        ));
    }
    let results = match args.kind {
        SimKind::Clt => {
            inputs["centering"] = Value::from(args.centering.name());
            let diagnostics = match args.centering {
                Centering::Exact => run_clt_experiment(&cfg)?,
                Centering::Boundary => run_boundary_clt_experiment(&cfg)?,
            };
            clt_value(&diagnostics)
        }
        SimKind::Coverage => {
            let r = run_coverage_experiment(&cfg)?;
            json!({
                "level": num(r.level),
                "empirical_coverage": num(r.empirical_coverage),
                "mc_stderr": num(r.mc_stderr),
                "reps": r.reps,
            })
        }
        SimKind::Mse => {
            let r = run_mse_experiment(&cfg)?;
            json!({
                "empirical_mse": num(r.empirical_mse),
                "exact_mse": num(r.exact_mse),
                "upper_bound": num(r.upper_bound),
                "lower_bound": num(r.lower_bound),
                "reps": r.reps,
            })
        }
    };
    Ok(RunReport::new("simulate", inputs, results).with_seed(args.seed))
}

fn same_columns(a: &SampleMatrix, b: &SampleMatrix) -> Result<(), CliError> {
    if a.cols() != b.cols() {
        return Err(logdet_core::Error::DimensionMismatch {
            left: a.cols(),
            right: b.cols(),
        }
        .into());
    }
    Ok(())
}

fn test_entropy(first: &Path, second: &Path, alpha: f64) -> Result<RunReport, CliError> {
    let (x1, x2) = (read_sample(first)?, read_sample(second)?);
    same_columns(&x1, &x2)?;
    let r = entropy_equality_test(&x1, &x2, alpha)?;
    let inputs = json!({
        "first": path_value(first),
        "second": path_value(second),
        "alpha": num(alpha),
    });
    let results = json!({
        "n1": x1.rows() - 1,
        "n2": x2.rows() - 1,
        "p": x1.cols(),
        "h1": num(r.h1),
        "h2": num(r.h2),
        "se": num(r.se),
        "z_stat": num(r.z_stat),
        "p_value": num(r.p_value),
        "alpha": num(r.alpha),
        "reject": r.reject,
    });
    Ok(RunReport::new("test-entropy", inputs, results))
}

fn kl(first: &Path, second: &Path) -> Result<RunReport, CliError> {
    let (pp, qq) = (read_params(first)?, read_params(second)?);
    let value = kl_gaussian_exact(&pp, &qq)?;
    let inputs =
        json!({ "first": path_value(first), "second": path_value(second), "mode": "exact" });
    let results = json!({ "p": pp.dim(), "kl": num(value) });
    Ok(RunReport::new("kl", inputs, results))
}

fn kl_from_data(first: &Path, second: &Path, level: f64) -> Result<RunReport, CliError> {
    let (x1, x2) = (read_sample(first)?, read_sample(second)?);
    same_columns(&x1, &x2)?;
    let est = logdet_ratio_estimate(&x1, &x2, level)?;
    let inputs = json!({
        "first": path_value(first),
        "second": path_value(second),
        "mode": "data",
        "level": num(level),
    });
    let results = json!({
        "n1": x1.rows() - 1,
        "n2": x2.rows() - 1,
        "p": x1.cols(),
        "log_det_ratio": log_det_value(&est),
    });
    Ok(RunReport::new("kl", inputs, results))
}

fn decision(d: &Discriminant) -> &'static str {
    if d.delta.abs() <= BOUNDARY_TOLERANCE {
        "boundary"
    } else {
        match d.classify() {
            Population::First => "first",
            Population::Second => "second",
        }
    }
}

fn qda(first: &Path, second: &Path, points: &Path, plugin: bool) -> Result<RunReport, CliError> {
    let zs = read_points(points)?;
    let discriminants: Vec<Discriminant> = if plugin {
        let (x1, x2) = (read_sample(first)?, read_sample(second)?);
        same_columns(&x1, &x2)?;
        let rule = PluginQda::fit(&x1, &x2)?;
        zs.iter()
            .map(|z| rule.discriminant(z))
            .collect::<Result<_, _>>()?
    } else {
        let (pp, qq) = (read_params(first)?, read_params(second)?);
        zs.iter()
            .map(|z| qda_oracle_discriminant(z, &pp, &qq))
            .collect::<Result<_, _>>()?
    };
    let inputs = json!({
        "first": path_value(first),
        "second": path_value(second),
        "points": path_value(points),
        "mode": if plugin { "plugin" } else { "oracle" },
    });
    let rows: Vec<Value> = zs
        .iter()
        .zip(&discriminants)
        .map(|(z, d)| {
            json!({
                "z": z.iter().copied().map(num).collect::<Vec<_>>(),
                "delta": num(d.delta),
                "quad_first": num(d.quad_first),
                "quad_second": num(d.quad_second),
                "decision": decision(d),
            })
        })
        .collect();
    let results = json!({
        "log_det_term": num(discriminants[0].log_det_term),
        "points": rows,
    });
    Ok(RunReport::new("qda", inputs, results))
}
