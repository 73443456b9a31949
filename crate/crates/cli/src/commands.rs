use std::f64::consts::FRAC_PI_4;

use fnf_core::algebra::XPoly;
use fnf_core::beta_ops::{phi_j_asymptotics, SlopeFit};
use fnf_core::direct::{compute_normal_form, conjugacy_residual, NormalForm};
use fnf_core::io::{h_table, phi_table, Check, ComponentAsymptotics, DiagnosticsSection, KamSection, LinearizeSection, ProblemFile, RunReport};
use fnf_core::kam::{bound_fits, corrected_conjugacy_gap, cross_validate, plan_schedule, run_kam, Polydisk};
use fnf_core::problem::ProblemSpec;
use fnf_core::spectra::saddle_geometry;
use fnf_core::verify::{check_conjugacy, default_path, default_w0, monodromy_check};
use fnf_core::{Error, Result};
use num_complex::Complex64;

use crate::output::{csv_row, CsvFile};
use crate::{Flags, Stage};

const FORMAL_RESIDUAL_TOL: f64 = 1e-9;
const CROSS_TOL: f64 = 1e-8;
/// Bound on the conjugacy residual when too few residuals clear the
/// integrator noise to fit an exponent.
const SMALL_RESIDUAL: f64 = 1e-9;
const EXPONENT_WINDOW: f64 = 0.5;
const LINEAR_LOOP_TOL: f64 = 1e-9;
const NONLINEAR_LOOP_TOL: f64 = 1e-8;
const ASYMPTOTIC_NS: [usize; 7] = [4, 8, 16, 32, 64, 128, 256];
const BOUND_DELTAS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];
const GEOMETRY_SAMPLES: usize = 33;

pub struct Run {
    pub report: Option<RunReport>,
    pub csv: Vec<CsvFile>,
    pub error: Option<Error>,
}

fn stage_name(stage: Stage) -> &'static str {
    match stage {
        Stage::Check => "check",
        Stage::Linearize => "linearize",
        Stage::Kam => "kam",
        Stage::Verify => "verify",
        Stage::Diagnose => "diagnose",
        Stage::All => "all",
    }
}

fn load(flags: &Flags) -> Result<(ProblemFile, ProblemSpec)> {
    let file = ProblemFile::read(&flags.input).map_err(|e| match e {
        Error::Io(io) => Error::Invalid {
            path: "--input".into(),
            message: format!("{}: {io}", flags.input.display()),
        },
        other => other,
    })?;
    let mut spec = file.to_spec(flags.order, flags.convention())?;
    if let Some(tol) = flags.tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Invalid {
                path: "--tol".into(),
                message: format!("{tol} is not in (0, 1)"),
            });
        }
        spec.tolerances.integrator = tol;
    }
    Ok((file, spec))
}

pub fn run(stage: Stage, flags: &Flags) -> Run {
    let (file, spec) = match load(flags) {
        Ok(v) => v,
        Err(e) => {
            return Run {
                report: None,
                csv: Vec::new(),
                error: Some(e),
            }
        }
    };
    let mut report = RunReport::new(stage_name(stage), &spec);
    let mut csv = Vec::new();
    let result = execute(stage, flags, &file, &spec, &mut report, &mut csv);
    let error = result.err();
    if let Some(e) = &error {
        report.error = Some(e.to_string());
    }
    Run {
        report: Some(report),
        csv,
        error,
    }
}

fn execute(stage: Stage, flags: &Flags, file: &ProblemFile, p: &ProblemSpec, report: &mut RunReport, csv: &mut Vec<CsvFile>) -> Result<()> {
    let all = stage == Stage::All;
    if all || stage == Stage::Check {
        check(p, file, report)?;
    }
    if stage == Stage::Diagnose {
        return diagnose(p, report, csv);
    }
    if stage == Stage::Check {
        return Ok(());
    }
    let nf = linearize(p, report, all || stage == Stage::Linearize)?;
    if all || stage == Stage::Kam {
        kam(p, flags, file, &nf, report, csv)?;
    }
    if all || stage == Stage::Verify {
        verify(p, file, &nf, report, csv)?;
    }
    if all {
        diagnose(p, report, csv)?;
    }
    Ok(())
}

fn check(p: &ProblemSpec, file: &ProblemFile, report: &mut RunReport) -> Result<()> {
    let assumptions = p.assumptions()?;
    let geometry = saddle_geometry(&p.eigen, p.order(), GEOMETRY_SAMPLES, file.center)?;
    report.checks.push(Check::at_least("domain radius rho >= rho_min", p.domain.rho, geometry.rho_min));
    let gate = assumptions.gate(p.scan.require_diophantine);
    report.checks.push(Check::flag(
        format!("eigenvalue assumptions ({})", assumptions.scope),
        gate.is_ok(),
    ));
    report.assumptions = Some(assumptions);
    report.geometry = Some(geometry);
    gate
}

fn linearize(p: &ProblemSpec, report: &mut RunReport, record: bool) -> Result<NormalForm> {
    let nf = compute_normal_form(p)?;
    if !record {
        return Ok(nf);
    }
    let residual = conjugacy_residual(p, &nf)?;
    let scale = p
        .f
        .components()
        .iter()
        .flat_map(|s| s.terms().map(|(_, q)| q.max_abs_coeff()).collect::<Vec<_>>())
        .fold(1.0, f64::max);
    let formal = residual
        .components()
        .iter()
        .flat_map(|s| s.terms().map(|(_, q)| q.max_abs_coeff()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
        / scale;
    let worst_j = nf.audit.iter().flat_map(|o| o.terms.iter().map(|t| t.residual)).fold(0.0, f64::max);
    report.checks.push(Check::at_most("J leftover equation residual", worst_j, p.tolerances.j.compatibility));
    report.checks.push(Check::at_most(
        "obstruction integrals after correction",
        nf.max_obstruction_after(),
        p.tolerances.obstruction,
    ));
    report.checks.push(Check::at_most("formal conjugacy residual (relative)", formal, FORMAL_RESIDUAL_TOL));
    report.linearize = Some(LinearizeSection {
        phi: phi_table(&nf.phi),
        h: h_table(&nf.h),
        audit: nf.audit.clone(),
        formal_residual: formal,
    });
    Ok(nf)
}

fn kam(p: &ProblemSpec, flags: &Flags, file: &ProblemFile, nf: &NormalForm, report: &mut RunReport, csv: &mut Vec<CsvFile>) -> Result<()> {
    let mut cfg = file.kam_config();
    if let Some(k) = flags.kmax {
        cfg.kmax = k;
    }
    if let Some(d) = flags.delta1 {
        cfg.delta1 = d;
    }
    let (schedule, gate) = plan_schedule(p, &cfg)?;
    report.checks.push(Check::at_most("initial size ||sigma f||0 <= delta1^nu", gate.norm, gate.threshold));
    let run = run_kam(p, &schedule, gate, &cfg)?;
    for s in &run.steps {
        let zo = s.zero_order_f.map_or((p.order() + 1) as f64, |z| z as f64);
        report.checks.push(Check::at_least(format!("zero order of f^[{}]", s.k), zo, s.zero_order_bound as f64));
    }
    // Full-order deltas go into the report; the checks use the orders on which
    // Psi^[k] is constant in x, where agreement is guaranteed.
    let cross = cross_validate(&run, nf)?;
    for c in &cross {
        report.checks.push(Check::at_most(format!("Psi^[{}] vs phi, orders <= {}", c.k, c.x_free_limit), c.psi_delta_x_free, CROSS_TOL));
        report.checks.push(Check::at_most(format!("H_{} vs w+h, orders <= {}", c.k, c.x_free_limit), c.map_delta_x_free, CROSS_TOL));
    }
    let gaps = corrected_conjugacy_gap(p, &run)?;
    for (i, g) in gaps.iter().enumerate() {
        report.checks.push(Check::at_most(format!("H_{} linearizes f - Psi^[{}] below order 2^{}+1", i + 1, i + 1, i + 1), *g, FORMAL_RESIDUAL_TOL));
    }
    let rows = run
        .steps
        .iter()
        .map(|s| {
            let n = s.norms.unwrap_or_default();
            let zo = |z: Option<usize>| z.map_or(-1.0, |z| z as f64);
            csv_row(&[
                s.k as f64,
                s.delta,
                s.rho,
                s.radius,
                n.f.sup,
                n.f.weighted,
                n.h.sup,
                n.dh,
                n.fnext.sup,
                n.fnext.weighted,
                zo(s.zero_order_f),
                zo(s.zero_order_next),
            ])
        })
        .collect();
    csv.push(CsvFile {
        name: "norm_vs_k.csv",
        header: "k,delta,rho,radius,f_sup,f_weighted,h_sup,dh,fnext_sup,fnext_weighted,zero_order_f,zero_order_next",
        rows,
    });
    report.kam = Some(KamSection {
        schedule: run.schedule.clone(),
        gate: run.gate,
        steps: run.steps.clone(),
        converged: run.converged,
        cross_validation: cross,
        corrected_gap: gaps,
    });
    Ok(())
}

fn verify(p: &ProblemSpec, file: &ProblemFile, nf: &NormalForm, report: &mut RunReport, csv: &mut Vec<CsvFile>) -> Result<()> {
    let cfg = file.verify_config();
    let path = default_path(p, &cfg)?;
    let conj = check_conjugacy(p, nf, &default_w0(p.dim(), cfg.w0_magnitude), &path, cfg.magnitudes)?;
    match conj.slope.as_ref().and_then(SlopeFit::slope) {
        Some(s) => report.checks.push(Check::within("conjugacy residual exponent", s, (p.order() + 1) as f64, EXPONENT_WINDOW)),
        None => {
            let smallest = conj.rows.last().map_or(0.0, |r| r.residual);
            report.checks.push(Check::at_most("conjugacy residual at the smallest |w0|", smallest, SMALL_RESIDUAL));
        }
    }
    csv.push(CsvFile {
        name: "residual_vs_w0.csv",
        header: "w0_magnitude,residual",
        rows: conj.rows.iter().map(|r| csv_row(&[r.magnitude, r.residual])).collect(),
    });
    report.conjugacy = Some(conj);

    let mono = monodromy_check(p, nf, &cfg)?;
    for l in &mono.loops {
        report.checks.push(Check::at_most(format!("linear loop transport around {}", l.around), l.linear_mismatch, LINEAR_LOOP_TOL));
        report.checks.push(Check::at_most(
            format!("corrected loop transport around {} commutes with H", l.around),
            l.nonlinear_mismatch,
            NONLINEAR_LOOP_TOL,
        ));
    }
    let worst = mono.obstructions.iter().map(|o| o.max_after).fold(0.0, f64::max);
    report.checks.push(Check::at_most("obstructions after correction, all orders", worst, p.tolerances.obstruction));
    report.monodromy = Some(mono);
    Ok(())
}

fn diagnose(p: &ProblemSpec, report: &mut RunReport, csv: &mut Vec<CsvFile>) -> Result<()> {
    let mut asymptotics = Vec::new();
    let mut rows = Vec::new();
    for j in 0..p.dim() {
        // Each component's weights concentrate at its own saddle point.
        let mut t = vec![0.0; p.dim()];
        t[j] = 1.0;
        let c = p.eigen.saddle_of(&t).ok_or_else(|| Error::ResonantDirection {
            direction: t.clone(),
            denominator: p.eigen.a[j] + p.eigen.b[j],
        })?;
        let square = XPoly::from_centered(c, vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let probes = [c + Complex64::from_polar(0.5, FRAC_PI_4), c + Complex64::from_polar(0.5, -FRAC_PI_4)];
        let r = phi_j_asymptotics(&square, p.eigen.a[j], p.eigen.b[j], &ASYMPTOTIC_NS, &probes)?;
        for (fit, target, window, what) in [(&r.phi_fit, -1.0, 0.1, "Phi"), (&r.j_fit, -2.0, 0.2, "J")] {
            let name = format!("{what} error slope vs n, component {j}");
            report.checks.push(match fit.slope() {
                Some(s) => Check::within(name, s, target, window),
                None => Check::flag(format!("{name}: exactly satisfied"), true),
            });
        }
        rows.extend(r.rows.iter().map(|row| csv_row(&[j as f64, row.n as f64, row.phi_error, row.j_error])));
        asymptotics.push(ComponentAsymptotics { component: j, report: r });
    }
    csv.push(CsvFile {
        name: "phi_j_error_vs_n.csv",
        header: "component,n,phi_error,j_error",
        rows,
    });
    let disk = Polydisk {
        c: p.center(),
        rho: p.domain.rho,
        radius: p.domain.radius,
    };
    let fits = bound_fits(p, &disk, &BOUND_DELTAS, &Default::default())?;
    report.checks.push(Check::flag("step bound ||h|| <= C delta^-2 ||f||", fits.h_slope_ok));
    report.diagnostics = Some(DiagnosticsSection {
        asymptotics,
        bound_fits: fits,
    });
    Ok(())
}
