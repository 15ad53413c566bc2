use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io::Write;

use equilibria::configuration::build_matrix;
use equilibria::dynamics::linear_growth_rate;
use equilibria::equilibrium::{classify_singularity, residual, DEFAULT_CLASSIFY_TOL};
use equilibria::generators::{
    generate_circle, generate_collinear, generate_polar_curve, generate_random_plane, CurveSampling, CurveSpec,
    PolarCurve, RegionSpec, Spacing,
};
use equilibria::{
    center_of_vorticity, classify_far_field, integrate, single_orbit, solve_strengths, spectral_report, velocity_grid,
    Error, Execution, OrbitParams, PointSet, StrengthVector, Window, C64,
};
use serde_json::{json, Map};

use crate::args::{Cli, Command, CurveName, CurveSpacing, FieldArgs, GenerateArgs, InputArgs, OrbitArgs, VerifyArgs};
use crate::files::{
    read_configuration, to_json, ClassificationSection, ConfigurationFile, ReportFile, SolutionSection,
};
use crate::CliError;

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let bytes = match &cli.command {
        Command::Generate(a) => generate(cli, a)?,
        Command::Solve(a) => solve(cli, a)?,
        Command::Verify(a) => verify(cli, a)?,
        Command::Field(a) => field(cli, a)?,
        Command::Spectrum(a) => spectrum(cli, a)?,
        Command::Orbit(a) => orbit(a)?,
    };
    emit(cli, &bytes)
}

fn emit(cli: &Cli, bytes: &[u8]) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn generate(cli: &Cli, a: &GenerateArgs) -> Result<Vec<u8>, CliError> {
    if a.region.is_some() && !a.plane {
        return Err(CliError::Usage("--region only applies to --plane".into()));
    }
    if a.spacing.is_some() && a.curve.is_none() {
        return Err(CliError::Usage("--spacing only applies to --curve".into()));
    }
    let mut meta = Map::new();
    meta.insert("n".into(), json!(a.n));
    meta.insert("distribution".into(), json!(if a.random { "random" } else { "even" }));
    if a.random {
        meta.insert("seed".into(), json!(cli.seed));
    }
    let spacing = if a.random {
        Spacing::Random { seed: cli.seed }
    } else {
        Spacing::Even
    };

    let points = if a.line {
        meta.insert("generator".into(), json!("line"));
        generate_collinear(a.n, spacing)
    } else if a.circle {
        meta.insert("generator".into(), json!("circle"));
        meta.insert("radius".into(), json!(a.radius));
        meta.insert("phase".into(), json!(a.phase));
        generate_circle(a.n, spacing, a.radius, a.phase)
    } else if let Some(name) = a.curve {
        let (curve, id) = match name {
            CurveName::Flower => (PolarCurve::Flower, "flower"),
            CurveName::FigureEight => (PolarCurve::FigureEight, "figure_eight"),
        };
        let sampling = match (a.random, a.spacing) {
            (true, Some(CurveSpacing::Arclength)) => {
                return Err(CliError::Usage(
                    "--spacing arclength cannot be combined with --random".into(),
                ))
            }
            (true, _) => CurveSampling::RandomParameter { seed: cli.seed },
            (false, Some(CurveSpacing::Arclength)) => CurveSampling::EvenArclength,
            (false, _) => CurveSampling::EvenParameter,
        };
        meta.insert("generator".into(), json!(id));
        meta.insert("phase".into(), json!(a.phase));
        if !a.random {
            let s = if sampling == CurveSampling::EvenArclength {
                "arclength"
            } else {
                "parameter"
            };
            meta.insert("spacing".into(), json!(s));
        }
        generate_polar_curve(
            &CurveSpec {
                curve,
                phase: a.phase,
                sampling,
            },
            a.n,
        )
    } else {
        if a.even {
            return Err(CliError::Usage("--plane placement is always random".into()));
        }
        let region = match a.region.as_deref() {
            None => RegionSpec::unit_square(cli.seed),
            Some(&[x_min, x_max, y_min, y_max]) => RegionSpec {
                x_min,
                x_max,
                y_min,
                y_max,
                seed: cli.seed,
            },
            Some(_) => return Err(CliError::Usage("--region takes four values".into())),
        };
        meta.insert("generator".into(), json!("plane"));
        meta.insert("distribution".into(), json!("random"));
        meta.insert("seed".into(), json!(cli.seed));
        meta.insert(
            "region".into(),
            json!([region.x_min, region.x_max, region.y_min, region.y_max]),
        );
        generate_random_plane(a.n, &region)
    }
    .map_err(CliError::Generation)?;

    Ok(to_json(&ConfigurationFile::from_points(&points, meta)))
}

fn load(input: &std::path::Path) -> Result<(ConfigurationFile, PointSet, Option<StrengthVector>), CliError> {
    let file = read_configuration(input)?;
    let (points, strengths) = file.decode()?;
    Ok((file, points, strengths))
}

fn solve_error(e: Error) -> CliError {
    match e {
        Error::NoEquilibrium { .. } => CliError::NoEquilibrium(e),
        e => CliError::Numerical(e),
    }
}

fn solve(cli: &Cli, a: &InputArgs) -> Result<Vec<u8>, CliError> {
    let (file, points, _) = load(&a.input)?;
    let solution = solve_strengths(&points, cli.tol).map_err(solve_error)?;
    let spectrum = spectral_report(&build_matrix(&points), cli.mode.into(), cli.tol).map_err(CliError::Numerical)?;
    let g = &solution.strengths;
    let kinds = g
        .iter()
        .map(|&x| classify_singularity(x, DEFAULT_CLASSIFY_TOL))
        .collect();
    let cv = center_of_vorticity(&points, g).map_err(CliError::Numerical)?;
    let report = ReportFile {
        configuration: ConfigurationFile {
            strengths: None,
            ..file
        }
        .with_strengths(g),
        solution: SolutionSection::from(&solution),
        spectrum,
        classification: ClassificationSection::new(kinds, classify_far_field(g, DEFAULT_CLASSIFY_TOL), &cv),
    };
    if cli.out.is_some() {
        eprintln!(
            "N = {}, nullity {}, residual {:.3e}, far field {}",
            points.len(),
            solution.nullity,
            solution.residual,
            report.classification.far_field.kind
        );
    }
    Ok(to_json(&report))
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Vec<u8>, CliError> {
    let (_, points, strengths) = load(&a.input)?;
    let strengths = strengths.ok_or_else(|| CliError::Input("the file has no strengths; run solve first".into()))?;
    let res = residual(&build_matrix(&points), &strengths).map_err(|e| CliError::Input(e.to_string()))?;
    let run = integrate(points.as_slice(), strengths.as_slice(), a.t_final, a.dt).map_err(|e| match e {
        Error::CollisionAbort(_) => CliError::Collision(e),
        e => CliError::Usage(e.to_string()),
    })?;
    let drift = run.max_displacement();
    let growth = linear_growth_rate(points.as_slice(), strengths.as_slice()).map_err(CliError::Numerical)?;
    let pass = drift <= a.drift_tol && res <= a.residual_tol;

    let mut out = String::new();
    writeln!(out, "max drift         {drift:.6e}  (limit {:.1e})", a.drift_tol).unwrap();
    writeln!(out, "residual          {res:.6e}  (limit {:.1e})", a.residual_tol).unwrap();
    writeln!(out, "growth rate       {growth:.6e}").unwrap();
    writeln!(out, "close approaches  {}", run.events.len()).unwrap();
    writeln!(out, "result            {}", if pass { "pass" } else { "fail" }).unwrap();
    if pass {
        Ok(out.into_bytes())
    } else {
        emit(cli, out.as_bytes())?;
        Err(CliError::VerifyFailed(format!("drift {drift:.3e}, residual {res:.3e}")))
    }
}

fn field(cli: &Cli, a: &FieldArgs) -> Result<Vec<u8>, CliError> {
    let (_, points, strengths) = load(&a.input)?;
    let strengths = match strengths {
        Some(s) => s,
        None => solve_strengths(&points, cli.tol).map_err(solve_error)?.strengths,
    };
    let strengths = if a.ortho { strengths.scaled(C64::i()) } else { strengths };
    let window = match (a.x_min, a.x_max, a.y_min, a.y_max) {
        (None, None, None, None) => Window::around(points.as_slice()),
        (Some(x_min), Some(x_max), Some(y_min), Some(y_max)) => Window {
            x_min,
            x_max,
            y_min,
            y_max,
        },
        _ => {
            return Err(CliError::Usage(
                "give all of --x-min --x-max --y-min --y-max or none".into(),
            ))
        }
    };
    let grid = velocity_grid(
        points.as_slice(),
        strengths.as_slice(),
        &window,
        a.nx,
        a.ny,
        Execution::Parallel,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = Vec::new();
    grid.write_csv(&mut out)?;
    Ok(out)
}

fn spectrum(cli: &Cli, a: &InputArgs) -> Result<Vec<u8>, CliError> {
    let (_, points, _) = load(&a.input)?;
    let r = spectral_report(&build_matrix(&points), cli.mode.into(), cli.tol).map_err(CliError::Numerical)?;
    let mut out = String::new();
    writeln!(
        out,
        "N = {}  rank = {}  mode = {}",
        points.len(),
        r.rank,
        r.normalization_mode
    )
    .unwrap();
    writeln!(out, "{:>4}  {:>12}  {:>10}", "k", "sigma", "normalized").unwrap();
    for (k, s) in r.sigma_raw.iter().enumerate() {
        let norm = r.sigma_normalized.get(k).map_or("-".to_string(), |x| format!("{x:.4}"));
        writeln!(out, "{:>4}  {:>12.4}  {:>10}", k + 1, s, norm).unwrap();
    }
    writeln!(out, "entropy {:.4}", r.entropy).unwrap();
    writeln!(
        out,
        "spectral gap {:.4} (normalized {:.4})",
        r.spectral_gap_raw, r.spectral_gap_normalized
    )
    .unwrap();
    Ok(out.into_bytes())
}

fn orbit(a: &OrbitArgs) -> Result<Vec<u8>, CliError> {
    let p = OrbitParams {
        gamma: C64::new(a.gamma_re, a.gamma_im),
        r0: a.r0,
        theta0: a.theta0,
    };
    if a.r0.is_nan() || a.r0 <= 0.0 || a.rows == 0 {
        return Err(CliError::Usage("need --r0 > 0 and --rows > 0".into()));
    }
    if let Some(tc) = p.collapse_time().filter(|&tc| a.t_final >= tc) {
        return Err(CliError::Collision(Error::CollapseReached {
            t: a.t_final,
            collapse_time: tc,
        }));
    }
    // a zero-strength tracer leaves the singularity at the origin fixed
    let start = [C64::new(0.0, 0.0), C64::from_polar(a.r0, a.theta0)];
    let run = integrate(&start, &[p.gamma, C64::new(0.0, 0.0)], a.t_final, a.dt).map_err(|e| match e {
        Error::CollisionAbort(_) => CliError::Collision(e),
        e => CliError::Usage(e.to_string()),
    })?;

    let mut theta = a.theta0;
    let mut rows = Vec::with_capacity(run.times.len());
    let mut max_err: f64 = 0.0;
    for (t, z) in run.times.iter().zip(&run.positions) {
        let (r, th) = single_orbit(&p, *t).map_err(CliError::Collision)?;
        let w = z[1];
        theta += ((w.arg() - theta + TAU / 2.0).rem_euclid(TAU)) - TAU / 2.0;
        max_err = max_err.max((C64::from_polar(r, th) - w).norm());
        rows.push((*t, r, w.norm(), th, theta));
    }

    let mut out = String::new();
    writeln!(
        out,
        "{:>8}  {:>10}  {:>10}  {:>10}  {:>10}",
        "t", "r", "r_rk4", "theta", "theta_rk4"
    )
    .unwrap();
    let last = rows.len() - 1;
    for k in 0..=a.rows {
        let (t, r, rn, th, thn) = rows[(k * last + a.rows / 2) / a.rows];
        writeln!(out, "{t:>8.4}  {r:>10.4}  {rn:>10.4}  {th:>10.4}  {thn:>10.4}").unwrap();
    }
    writeln!(out, "max |z - z_rk4| {max_err:.3e}").unwrap();
    Ok(out.into_bytes())
}
