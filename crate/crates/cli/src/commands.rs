//! The four report-producing commands.

use crate::input::{InputError, InputFile, SurfaceInput};
use crate::report::{digest_hex, Report};
use submonoidal::cremona::{self, CremonaError};
use submonoidal::exactalg::{poly_print, MultiPoly};
use submonoidal::hypersurface::{
    coordinate_vars, subspace_dimension_bound, SubmonoidalHypersurface,
};
use submonoidal::lattice;
use submonoidal::monoidal::{self, MonoidalSurface};
use submonoidal::submonoidal::{
    submonoidal_from_polynomial, SubmonoidalError, SubmonoidalSurface,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Symbolic,
    Sampled,
}

fn polys(ps: &[&MultiPoly]) -> String {
    let strs: Vec<String> = ps.iter().map(|p| poly_print(p)).collect();
    format!("[{}]", strs.join(", "))
}

fn surface_input(text: &str) -> Result<SurfaceInput, InputError> {
    match crate::input::parse_input(text)? {
        InputFile::Surface(s) => Ok(s),
        InputFile::Hypersurface(_) => Err(InputError::Invalid(
            "expected a surface input (no gamma_codim)".to_string(),
        )),
    }
}

/// Extraction, discriminants, fiber census, non-degeneracy, distinguished
/// point loci. Monoidal inputs (no quadratic part along the line) get the
/// monoidal analysis instead.
pub fn cmd_analyze(text: &str) -> Result<Report, InputError> {
    let input = surface_input(text)?;
    let mut report = Report::new("analyze", digest_hex(text.as_bytes()));
    report.datum(
        "field",
        match input.field {
            submonoidal::exactalg::FieldCtx::Rational => "Q".to_string(),
            submonoidal::exactalg::FieldCtx::Quadratic(dd) => format!("Q(sqrt {dd})"),
        },
    );
    let line = (&input.line.0, &input.line.1);
    match submonoidal_from_polynomial(&input.f, line) {
        Ok(s) => analyze_submonoidal(&mut report, &s),
        Err(SubmonoidalError::QuadraticPartZero) => {
            match monoidal::monoidal_from_polynomial(&input.f, line) {
                Ok(s) => analyze_monoidal(&mut report, &s),
                Err(e) => report.check(
                    "validate",
                    "input is a monoidal or submonoidal surface along the line",
                    false,
                    e,
                ),
            }
        }
        Err(e) => report.check(
            "validate",
            "input is a submonoidal surface along the line",
            false,
            e,
        ),
    }
    Ok(report)
}

fn analyze_submonoidal(report: &mut Report, s: &SubmonoidalSurface) {
    let d = s.degree();
    report.datum("kind", "submonoidal");
    report.datum("degree", d);
    let [a, b, c, dd, e, f] = s.forms();
    report.datum("forms", polys(&[a, b, c, dd, e, f]));
    report.check(
        "validate",
        "input is a submonoidal surface along the line",
        true,
        "six binary forms extracted",
    );
    let p = s.discriminant_p();
    let r = s.small_discriminant_r();
    report.datum("discriminant", poly_print(&p));
    report.datum("small-discriminant", poly_print(&r));
    match s.classify_fibers() {
        Err(err) => report.check(
            "fiber-census",
            "singular residual conics counted by the discriminant",
            false,
            err,
        ),
        Ok(fc) => {
            report.datum(
                "singular-fibers",
                format!("s = ({}, {}, {})", fc.s1, fc.s2, fc.s3),
            );
            report.datum("node-count", fc.node_count);
            if let Some(note) = &fc.rdp_note {
                report.datum("multiplicity-note", note);
            }
            let census_ok = fc.max_multiplicity <= 2 && fc.census_sum() == 3 * d - 4;
            report.check(
                "fiber-census",
                "s1 + 2*s2 + 2*s3 = 3d - 4",
                census_ok || fc.max_multiplicity > 2,
                format!(
                    "{} + 2*{} + 2*{} = {} (target {})",
                    fc.s1,
                    fc.s2,
                    fc.s3,
                    fc.census_sum(),
                    3 * d - 4
                ),
            );
            report.check(
                "node-bound",
                "the surface has at most 3d - 4 nodes from singular fibers",
                fc.node_count <= 3 * d - 4,
                format!("{} <= {}", fc.node_count, 3 * d - 4),
            );
        }
    }
    let verdict = s.check_nondegenerate();
    report.check(
        "nondegenerate",
        "discriminant roots of multiplicity <= 2 and small discriminant squarefree",
        verdict.pass,
        if verdict.pass {
            format!("checked; {}", verdict.unchecked_hypothesis)
        } else {
            verdict.failures.join("; ")
        },
    );
    match s.eckardt_locus() {
        Ok(locus) => {
            report.datum("eckardt-locus", poly_print(&locus));
            report.datum(
                "eckardt-count",
                locus.total_degree().unwrap_or(0),
            );
        }
        Err(err) => report.datum("eckardt-locus", format!("undefined: {err}")),
    }
    if d >= 4 {
        match s.pinch_divisor() {
            Ok(pd) => {
                report.datum("pinch-divisor", poly_print(&pd.divisor));
                if let Some(shared) = &pd.shared_factor {
                    report.datum("pinch-shared-factor", poly_print(shared));
                }
                let expected = 4 * (d - 3);
                let got = pd.divisor.total_degree().unwrap_or(0);
                report.check(
                    "pinch-degree",
                    "branch divisor of the trace curve has degree at most 4(d - 3), with equality for generic surfaces",
                    got <= expected,
                    format!("degree {got} (generic {expected})"),
                );
            }
            Err(err) => report.datum("pinch-divisor", format!("undefined: {err}")),
        }
    }
}

fn analyze_monoidal(report: &mut Report, s: &MonoidalSurface) {
    let d = s.degree();
    report.datum("kind", "monoidal");
    report.datum("degree", d);
    let (a, b, c) = s.forms();
    report.datum("forms", polys(&[a, b, c]));
    report.check(
        "validate",
        "input is a monoidal surface along the line",
        true,
        "three binary forms extracted",
    );
    let sigma = s.sigma_curve();
    report.datum("trace-section", polys(&[&sigma.section[0], &sigma.section[1]]));
    if let Some(common) = &sigma.common {
        report.datum("trace-common-factor", poly_print(common));
    }
    let pinch = s.pinch_divisor();
    report.datum("pinch-divisor", poly_print(&pinch.wronskian));
    let expected = 2 * d - 4;
    let got = pinch.wronskian.total_degree().unwrap_or(0);
    report.check(
        "pinch-degree",
        "branch divisor of the trace curve has degree at most 2d - 4, with equality for generic surfaces",
        got <= expected,
        format!("degree {got} (generic {expected})"),
    );
}

/// Satellite curve and the two space involutions, with verification.
pub fn cmd_involutions(
    text: &str,
    mode: Mode,
    seed: u64,
    corrupt: bool,
) -> Result<Report, InputError> {
    let input = surface_input(text)?;
    let mut report = Report::new("involutions", digest_hex(text.as_bytes()));
    report.seed = Some(seed);
    let line = (&input.line.0, &input.line.1);
    let s = match submonoidal_from_polynomial(&input.f, line) {
        Ok(s) => s,
        Err(e) => {
            report.check(
                "validate",
                "input is a submonoidal surface along the line",
                false,
                e,
            );
            return Ok(report);
        }
    };
    let d = s.degree();
    report.datum("degree", d);
    match cremona::satellite_curve(&s) {
        Err(err) => report.check(
            "satellite",
            "the poles of the line trace a rational curve",
            false,
            err,
        ),
        Ok(sat) => {
            report.datum(
                "satellite",
                polys(&[&sat.reduced[0], &sat.reduced[1], &sat.reduced[2], &sat.reduced[3]]),
            );
            if !sat.cancelled.is_constant() {
                report.datum("satellite-cancelled", poly_print(&sat.cancelled));
            }
            report.datum("satellite-degree", sat.degree);
            report.check(
                "satellite",
                "satellite parameterization has degree 2d - 3 up to cancellation",
                sat.degree <= sat.expected_degree,
                format!("degree {} (generic {})", sat.degree, sat.expected_degree),
            );
        }
    }
    let theta = match cremona::theta(&s) {
        Ok(t) => t,
        Err(err) => {
            report.check(
                "reflection-involution",
                "the fiberwise reflection assembles into a Cremona involution",
                false,
                err,
            );
            return Ok(report);
        }
    };
    let (theta_red, _) = theta.reduce();
    report.datum(
        "theta",
        polys(&theta_red.components().iter().collect::<Vec<_>>()),
    );
    // Invariance: F o Theta is an exact multiple of F. The --corrupt hook
    // perturbs the surface equation to demonstrate a failing run.
    let fd = if corrupt {
        let av = coordinate_vars(4);
        s.defining_polynomial()
            .add(&MultiPoly::var(&av, 2).pow(d))
    } else {
        s.defining_polynomial()
    };
    let pulled = fd.substitute(theta.components());
    report.check(
        "surface-invariance",
        "F composed with the reflection involution is an exact multiple of F",
        pulled.try_divide(&fd).is_some(),
        if pulled.try_divide(&fd).is_some() {
            "exact division".to_string()
        } else {
            format!(
                "division left a remainder (degree {:?} numerator)",
                pulled.total_degree()
            )
        },
    );
    match mode {
        Mode::Symbolic => {
            report.check(
                "reflection-involution",
                "the reflection composed with itself is projectively the identity",
                cremona::verify_involution_symbolic(&theta_red),
                "symbolic composition",
            );
        }
        Mode::Sampled => {
            let res = cremona::verify_involution_sampled(&theta_red, 20, seed);
            report.check(
                "reflection-involution",
                "the reflection composed with itself is projectively the identity",
                matches!(res, Ok(20)),
                match res {
                    Ok(k) => format!("{k}/20 sampled points returned"),
                    Err(ref e) => format!("{e}"),
                },
            );
        }
    }
    match cremona::theta_prime(&s) {
        Err(err) => report.check(
            "harmonic-involution",
            "the harmonic companion involution is defined",
            false,
            err,
        ),
        Ok(tp) => {
            let av = coordinate_vars(4);
            let fd0 = s.defining_polynomial();
            let mut all = true;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let minor = MultiPoly::var(&av, i)
                        .mul(&tp.components()[j])
                        .sub(&MultiPoly::var(&av, j).mul(&tp.components()[i]));
                    all &= minor.try_divide(&fd0).is_some();
                }
            }
            report.check(
                "harmonic-involution",
                "cross minors with the identity are divisible by F: the surface is fixed pointwise",
                all,
                "6 cross minors",
            );
            let res = cremona::verify_commuting_sampled(&theta, &tp, 10, seed);
            report.check(
                "involutions-commute",
                "the reflection and harmonic involutions commute projectively",
                matches!(res, Ok(10)),
                match res {
                    Ok(k) => format!("{k}/10 sampled points"),
                    Err(CremonaError::SamplingExhausted) => {
                        "sampling exhausted".to_string()
                    }
                    Err(ref e) => format!("{e}"),
                },
            );
        }
    }
    Ok(report)
}

/// Blow-up lattice bookkeeping for degree d.
pub fn cmd_lattice(d: u32) -> Result<Report, InputError> {
    if !(3..=12).contains(&d) {
        return Err(InputError::Invalid(format!(
            "degree must be between 3 and 12, got {d}"
        )));
    }
    let mut report = Report::new("lattice", digest_hex(d.to_string().as_bytes()));
    report.datum("degree", d);
    report.datum("rank", lattice::LatticeClass::rank_for(d));
    let std = lattice::standard_classes(d).expect("guarded degree");
    fn ii(a: &lattice::LatticeClass, b: &lattice::LatticeClass) -> i64 {
        lattice::intersection_number(a, b).expect("same degree")
    }
    report.datum("H.H", ii(&std.h, &std.h));
    report.datum("Sigma.Sigma", ii(&std.sigma, &std.sigma));
    report.datum("K.K", ii(&std.k, &std.k));
    report.datum("fiber.fiber", ii(&std.fiber, &std.fiber));
    report.check(
        "trace-self-intersection",
        "Sigma^2 = d - 4",
        ii(&std.sigma, &std.sigma) == i64::from(d) - 4,
        format!("{}", ii(&std.sigma, &std.sigma)),
    );
    report.check(
        "canonical-self-intersection",
        "K^2 = 12 - 3d",
        ii(&std.k, &std.k) == 12 - 3 * i64::from(d),
        format!("{}", ii(&std.k, &std.k)),
    );
    let combo = std
        .h
        .scale(i64::from(d) - 4)
        .sub(&std.sigma.scale(i64::from(d) - 3));
    report.check(
        "canonical-combination",
        "K = (d-4)H - (d-3)Sigma",
        std.k == combo,
        "coefficientwise equality",
    );
    let with_classes = 3 * d as usize - 4 <= 16;
    let census = lattice::enumerate_special_sections(d, with_classes)
        .expect("guarded degree");
    let counts: Vec<String> = census
        .groups
        .iter()
        .map(|g| format!("n={}: {}", g.n, g.count))
        .collect();
    report.datum("special-sections", counts.join(", "));
    report.datum("special-sections-total", census.total_with_exceptional);
    report.check(
        "census-total",
        "1 + sum over n of C(3d-4, 2n) = 2^(3d-5)",
        census.total_with_exceptional == 1u128 << (3 * d - 5),
        format!("{}", census.total_with_exceptional),
    );
    if d % 2 == 0 {
        let rank = lattice::LatticeClass::rank_for(d);
        let tau_sq = (0..rank).all(|i| {
            let e = lattice::LatticeClass::basis(d, i);
            lattice::tau_action(&lattice::tau_action(&e).unwrap()).unwrap() == e
        });
        report.check(
            "tau-squared",
            "the duality involution squares to the identity",
            tau_sq,
            format!("all {rank} basis classes"),
        );
        report.check(
            "tau-fixes-hyperplane",
            "the duality involution fixes the hyperplane class",
            lattice::tau_action(&std.h).unwrap() == std.h,
            "tau(H) = H",
        );
        let isometry = (0..rank).all(|i| {
            (0..rank).all(|j| {
                let a = lattice::LatticeClass::basis(d, i);
                let b = lattice::LatticeClass::basis(d, j);
                ii(
                    &lattice::tau_action(&a).unwrap(),
                    &lattice::tau_action(&b).unwrap(),
                ) == ii(&a, &b)
            })
        });
        report.check(
            "tau-isometry",
            "the duality involution preserves the intersection form",
            isometry,
            format!("all {rank}x{rank} basis pairs"),
        );
        if with_classes {
            let mut matched = 0usize;
            let mut total = 0usize;
            let mut ok = true;
            for g in &census.groups {
                for e in g.classes.as_ref().unwrap() {
                    total += 1;
                    let dual = lattice::dual_section(e).unwrap();
                    if lattice::tau_action(&e.class).unwrap() == dual.class {
                        matched += 1;
                    } else {
                        ok = false;
                    }
                }
            }
            report.check(
                "tau-matches-duality",
                "tau sends every special section to its dual section",
                ok,
                format!("{matched}/{total} classes"),
            );
        }
    }
    Ok(report)
}

/// Fiber matrix, satellite parameterization, dimension bound, and sampled
/// involution checks for a submonoidal hypersurface.
pub fn cmd_hypersurface(text: &str, seed: u64) -> Result<Report, InputError> {
    let h = match crate::input::parse_input(text)? {
        InputFile::Hypersurface(h) => h,
        InputFile::Surface(s) => {
            // A surface file is welcome here: analyze it as the (2,2) case.
            let line = (&s.line.0, &s.line.1);
            let surf = submonoidal_from_polynomial(&s.f, line)
                .map_err(|e| InputError::Invalid(e.to_string()))?;
            SubmonoidalHypersurface::from_surface(&surf)
        }
    };
    let mut report = Report::new("hypersurface", digest_hex(text.as_bytes()));
    report.seed = Some(seed);
    let (n, m, d) = h.dimensions();
    report.datum("ambient-dimension", n + 1);
    report.datum("center-codimension", m);
    report.datum("degree", d);
    let fm = h.fiber_matrix();
    for (i, row) in fm.iter().enumerate() {
        report.datum(
            &format!("fiber-matrix-row-{i}"),
            polys(&row.iter().collect::<Vec<_>>()),
        );
    }
    report.datum(
        "dimension-bound",
        subspace_dimension_bound(n, m, d),
    );
    match h.satellite_parameterization() {
        Err(err) => report.check(
            "satellite",
            "the poles of the center trace a rational variety",
            false,
            err,
        ),
        Ok(sat) => {
            report.datum(
                "satellite",
                polys(&sat.reduced.iter().collect::<Vec<_>>()),
            );
            report.datum("satellite-reduced-degree", sat.reduced_degree);
            report.check(
                "satellite",
                "raw satellite degree is (n+2-m)(d-2)+1",
                sat.raw_degree == Some(sat.expected_raw_degree),
                format!(
                    "raw degree {:?} (target {})",
                    sat.raw_degree, sat.expected_raw_degree
                ),
            );
        }
    }
    match h.theta_general() {
        Err(err) => report.check(
            "reflection-involution",
            "the fiberwise reflection assembles into a Cremona involution",
            false,
            err,
        ),
        Ok(th) => {
            let res = cremona::verify_involution_sampled(&th, 10, seed);
            report.check(
                "reflection-involution",
                "the reflection composed with itself is projectively the identity",
                matches!(res, Ok(10)),
                match res {
                    Ok(k) => format!("{k}/10 sampled points returned"),
                    Err(ref e) => format!("{e}"),
                },
            );
            if let Ok(tp) = h.theta_prime_general() {
                let fd = h.defining_polynomial();
                let av = coordinate_vars(n as usize + 2);
                let mut all = true;
                for i in 0..n as usize + 2 {
                    for j in (i + 1)..n as usize + 2 {
                        let minor = MultiPoly::var(&av, i)
                            .mul(&tp.components()[j])
                            .sub(&MultiPoly::var(&av, j).mul(&tp.components()[i]));
                        all &= minor.try_divide(&fd).is_some();
                    }
                }
                report.check(
                    "harmonic-involution",
                    "cross minors with the identity are divisible by the equation",
                    all,
                    "all cross minors",
                );
                let res = cremona::verify_commuting_sampled(&th, &tp, 5, seed);
                report.check(
                    "involutions-commute",
                    "the reflection and harmonic involutions commute projectively",
                    matches!(res, Ok(5)),
                    match res {
                        Ok(k) => format!("{k}/5 sampled points"),
                        Err(ref e) => format!("{e}"),
                    },
                );
            }
        }
    }
    Ok(report)
}

