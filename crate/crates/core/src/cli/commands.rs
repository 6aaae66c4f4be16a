use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::{json, Value};

use super::report::{Check, Report};
use super::{Command, ExampleArgs, ExampleKind, RunConfig};
use crate::chain::{build_chain, chain_via_shift};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector};
use crate::metric::{
    catalog_oscillator, catalog_two_point, classify_metric, find_metric, residual, solve_metric_space,
};
use crate::perturbation::{auto_k, perturb};
use crate::poly::RealPolynomial;
use crate::quasi::{induced_hamiltonian, induced_inner, metric_sqrt};
use crate::weyl::{build_shifted_hamiltonian, check_symbolic, ExactComplex, ShiftedPotentialSpec};

pub(super) fn dispatch(config: &RunConfig, report: &mut Report) -> Result<()> {
    let tol = config.tol;
    match &config.command {
        Command::Verify { hamiltonian, eta } => verify(report, hamiltonian, eta, tol),
        Command::Solve { hamiltonian, positive } => solve(report, hamiltonian, *positive, tol, config.seed),
        Command::Chain {
            hamiltonian,
            eta,
            k_max,
            no_normalize,
            shift,
        } => chain(report, hamiltonian, eta, *k_max, !no_normalize, *shift, tol),
        Command::Perturb {
            hamiltonian,
            eta,
            k,
            f,
            allow_hermitian,
        } => perturbation(report, hamiltonian, eta, k.as_deref(), f, *allow_hermitian, tol),
        Command::Quasi {
            hamiltonian,
            eta,
            phi,
            psi,
        } => quasi(report, hamiltonian, eta, phi.as_deref().zip(psi.as_deref()), tol),
        Command::Weyl { spec, theta, float } => weyl(report, spec, *theta, *float, tol),
        Command::Example(args) => example(report, args, tol),
    }
}

fn load_matrix(report: &mut Report, key: &str, path: &Path) -> Result<ComplexMatrix> {
    let m = ComplexMatrix::read_json(path)?;
    report.input(
        key,
        json!({
            "path": path.display().to_string(),
            "dimension": m.dim(),
            "frobenius_norm": m.frobenius_norm(),
        }),
    );
    Ok(m)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payload serializes")
}

fn complex_value(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn verify(report: &mut Report, h_path: &Path, eta_path: &Path, tol: f64) -> Result<()> {
    let h = load_matrix(report, "hamiltonian", h_path)?;
    let eta = load_matrix(report, "eta", eta_path)?;
    let r = residual(&h, &eta)?;
    let class = classify_metric(&eta, tol);
    report.result("residual", json!(r));
    report.result("classification", to_value(&class));
    report.check(Check::at_most("residual", r, tol));
    report.check(Check::at_most("eta_hermiticity_defect", class.hermiticity_defect, tol));
    report.check(Check::holds("eta_invertible", class.invertible));
    Ok(())
}

fn solve(report: &mut Report, h_path: &Path, positive: bool, tol: f64, seed: u64) -> Result<()> {
    let h = load_matrix(report, "hamiltonian", h_path)?;
    let basis = solve_metric_space(&h, tol);
    let worst = basis
        .basis
        .iter()
        .map(|b| residual(&h, b))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let found = find_metric(&basis, positive, tol, seed);
    report.result("basis", to_value(&basis));
    report.result("want_positive", json!(positive));
    match &found {
        Some(eta) => {
            report.result("metric", to_value(eta));
            report.result("metric_class", to_value(&classify_metric(eta, tol)));
        }
        None => report.result("metric", Value::Null),
    }
    report.check(Check::at_most("basis_residual_max", worst, tol));
    report.check(Check::holds("metric_found", found.is_some()));
    Ok(())
}

fn chain(
    report: &mut Report,
    h_path: &Path,
    eta_path: &Path,
    k_max: usize,
    normalize: bool,
    shift: bool,
    tol: f64,
) -> Result<()> {
    let h = load_matrix(report, "hamiltonian", h_path)?;
    let eta = load_matrix(report, "eta", eta_path)?;
    h.check_same_dim(&eta)?;
    report.input("k_max", json!(k_max));
    let chain = if shift {
        chain_via_shift(&h, &eta, k_max, normalize, tol)?
    } else {
        build_chain(&h, &eta, k_max, normalize, tol)?
    };
    let worst_residual = chain.residuals.iter().copied().fold(0.0, f64::max);
    let worst_defect = chain.classes.iter().map(|c| c.hermiticity_defect).fold(0.0, f64::max);
    report.results = to_value(&chain);
    report.check(Check::at_most("max_residual", worst_residual, tol));
    report.check(Check::at_most("max_hermiticity_defect", worst_defect, tol));
    report.check(Check::holds("no_degenerate_elements", !chain.has_degenerate()));
    Ok(())
}

fn perturbation(
    report: &mut Report,
    h_path: &Path,
    eta_path: &Path,
    k_path: Option<&Path>,
    f_text: &str,
    allow_hermitian: bool,
    tol: f64,
) -> Result<()> {
    let h = load_matrix(report, "hamiltonian", h_path)?;
    let eta = load_matrix(report, "eta", eta_path)?;
    let f: RealPolynomial = f_text.parse()?;
    report.input("f", to_value(&f));
    h.check_same_dim(&eta)?;
    let k = match k_path {
        Some(path) => load_matrix(report, "k", path)?,
        None => auto_k(&eta, &RealPolynomial::linear(1.0), tol)?,
    };
    let p = perturb(&h, &eta, &k, &f, tol, allow_hermitian)?;

    let anti = |m: &ComplexMatrix| m - &m.adjoint();
    let anti_h = anti(&h);
    let drift = (&anti(&p.h_tilde) - &anti_h).frobenius_norm() / anti_h.frobenius_norm().max(1.0);

    report.result("h_tilde", to_value(&p.h_tilde));
    report.result("k", to_value(&p.k));
    report.result("residual", json!(p.residual));
    report.result("commutator_defect", json!(p.commutator_defect));
    report.check(Check::at_most("residual", p.residual, tol));
    report.check(Check::at_most("k_commutator_defect", p.commutator_defect, tol));
    report.check(Check::at_most("anti_hermitian_part_change", drift, tol));
    Ok(())
}

fn quasi(report: &mut Report, h_path: &Path, eta_path: &Path, vectors: Option<(&Path, &Path)>, tol: f64) -> Result<()> {
    let h = load_matrix(report, "hamiltonian", h_path)?;
    let eta = load_matrix(report, "eta", eta_path)?;
    h.check_same_dim(&eta)?;
    let form = metric_sqrt(&eta, tol)?;
    let h_eta = induced_hamiltonian(&h, &form, tol)?;

    let sqrt_defect = (&(&form.sqrt_eta * &form.sqrt_eta) - &eta).frobenius_norm() / eta.frobenius_norm().max(1.0);
    let herm_defect = h_eta.anti_hermitian_norm() / h_eta.frobenius_norm().max(1.0);
    let spectrum = h_eta.eigenvalues()?;
    let max_imag = spectrum.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / h_eta.frobenius_norm().max(1.0);

    report.result("sqrt_eta", to_value(&form.sqrt_eta));
    report.result("h_eta", to_value(&h_eta));
    report.result(
        "spectrum",
        Value::Array(spectrum.iter().copied().map(complex_value).collect()),
    );
    if let Some((phi_path, psi_path)) = vectors {
        let phi = ComplexVector::read_json(phi_path)?;
        let psi = ComplexVector::read_json(psi_path)?;
        let value = induced_inner(&phi, &psi, &eta, tol, false)?;
        report.result("induced_inner", complex_value(value));
    }
    report.check(Check::at_most("sqrt_reproduces_eta", sqrt_defect, tol));
    report.check(Check::at_most("h_eta_hermitian", herm_defect, tol));
    report.check(Check::at_most("spectrum_real", max_imag, tol));
    Ok(())
}

fn weyl(report: &mut Report, spec_path: &Path, theta: Option<f64>, float: bool, tol: f64) -> Result<()> {
    let spec = ShiftedPotentialSpec::read_json(spec_path)?;
    if let Some(t) = theta {
        if !t.is_finite() {
            return Err(Error::InvalidParameter(format!("theta must be finite, got {t}")));
        }
    }
    report.input("spec", to_value(&spec));
    report.result("theta", json!(theta.unwrap_or_else(|| spec.theta())));
    report.result("exact", json!(!float));
    if float {
        let h = build_shifted_hamiltonian::<Complex64>(&spec);
        let r = check_symbolic::<Complex64>(&spec, theta);
        report.result("hamiltonian", to_value(&h.residual_terms()));
        report.result("residual", to_value(&r.residual_terms()));
        let scale = h.max_modulus().max(1.0);
        report.check(Check::at_most("residual_max_modulus", r.max_modulus() / scale, tol));
    } else {
        let h = build_shifted_hamiltonian::<ExactComplex>(&spec);
        let r = check_symbolic::<ExactComplex>(&spec, theta);
        report.result("hamiltonian", to_value(&h.residual_terms()));
        report.result("residual", to_value(&r.residual_terms()));
        report.result("residual_text", json!(r.to_string()));
        report.check(Check::at_most("residual_terms", r.len() as f64, 0.0));
    }
    Ok(())
}

fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    let mut text = serde_json::to_string_pretty(m).expect("matrix serializes");
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn example(report: &mut Report, args: &ExampleArgs, tol: f64) -> Result<()> {
    let (stem, (h, eta)) = match &args.which {
        ExampleKind::TwoPoint { x, y } => {
            report.input("x", complex_value(*x));
            report.input("y", complex_value(*y));
            ("two_point", catalog_two_point(*x, *y)?)
        }
        ExampleKind::Oscillator { omega } => {
            report.input("omega", json!(omega));
            ("oscillator", catalog_oscillator(*omega)?)
        }
    };
    let h_file: PathBuf = args.out_dir.join(format!("{stem}_H.json"));
    let eta_file: PathBuf = args.out_dir.join(format!("{stem}_eta.json"));
    write_matrix(&h_file, &h)?;
    write_matrix(&eta_file, &eta)?;
    let round_trip = ComplexMatrix::read_json(&h_file)? == h && ComplexMatrix::read_json(&eta_file)? == eta;

    let r = residual(&h, &eta)?;
    report.result("hamiltonian", to_value(&h));
    report.result("eta", to_value(&eta));
    report.result(
        "files",
        json!([h_file.display().to_string(), eta_file.display().to_string()]),
    );
    report.result("residual", json!(r));
    report.check(Check::at_most("residual", r, tol));
    report.check(Check::holds("files_round_trip", round_trip));
    Ok(())
}
