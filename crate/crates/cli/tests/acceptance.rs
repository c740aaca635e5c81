//! One line per acceptance criterion. Runs without the test harness so the
//! lines are always printed.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::neg_cmp_op_on_partial_ord)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cmgeom::contact::build_structure;
use cmgeom::curvature::{self, CurvatureData};
use cmgeom::nullity::{extract_k_mu, identity_check};
use cmgeom::pipeline::example_pipeline;
use cmgeom::recurrence::{solve_recurrence, DirectionStatus, Projector};
use cmgeom::{
    Classification, ContactStructure, Error, Frame, FrameMode, FrameSpec, NullityParams, Param,
    RecurrenceKind, Sampler, Verdict,
};
use cmverify::{corpus, parse_spec, run, Options, Suite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcore::linalg::identity;
use symcore::{parse_expr, RatFn, Symbol, SymbolTable};

const CONNECTION_BUDGET: Duration = Duration::from_secs(1);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);
const PROPERTY_CASES: usize = 50;
const SAMPLE_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn bundled(name: &str) -> (Frame, Option<ContactStructure>) {
    let spec = parse_spec(corpus::bundled(name).unwrap()).unwrap();
    let frame = Frame::new(spec.frame_spec()).unwrap();
    let cs = spec.contact.as_ref().map(|d| build_structure(&frame, d).unwrap());
    (frame, cs)
}

fn strings(v: &[RatFn]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn expected(text: &str) -> RatFn {
    let params = ["a1", "b1", "c1", "a2", "b2", "c2", "a3", "b3", "c3"];
    parse_expr(text, &SymbolTable::new(["x", "y", "z"], params))
        .unwrap()
        .to_ratfn()
        .unwrap()
}

fn connection_table() -> Outcome {
    let start = Instant::now();
    let (frame, _) = bundled("example3d");
    let elapsed = start.elapsed();
    let mut expected = vec![vec![vec!["0"; 3]; 3]; 3];
    expected[1][0] = vec!["0", "-1/y", "0"];
    expected[1][1] = vec!["1/y", "0", "0"];
    for i in 0..3 {
        for j in 0..3 {
            let got = strings(frame.gamma(i, j));
            ensure!(got == expected[i][j], "∇_E{}E{} = {got:?}", i + 1, j + 1);
        }
    }
    ensure!(elapsed < CONNECTION_BUDGET, "took {elapsed:?}");
    Ok(format!("9 entries exact, {elapsed:.2?}"))
}

fn curvature_components() -> Outcome {
    let (frame, _) = bundled("example3d");
    let curv = CurvatureData::new(&frame);
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 0..3 {
                let got = strings(&curv.component(i, j, k));
                let want = match (i, j, k) {
                    (0, 1, 0) => vec!["0", "2/y^2", "0"],
                    (0, 1, 1) => vec!["-2/y^2", "0", "0"],
                    _ => vec!["0"; 3],
                };
                ensure!(got == want, "R(E{},E{})E{} = {got:?}", i + 1, j + 1, k + 1);
            }
        }
    }
    Ok("R(E1,E2)E1 = (2/y^2)E2, R(E1,E2)E2 = -(2/y^2)E1, rest 0".into())
}

fn parametric_pipeline() -> Outcome {
    let (frame, cs) = bundled("example3d");
    let p = example_pipeline(&frame, cs.as_ref().unwrap(), &Sampler::none()).map_err(|e| e.to_string())?;
    let ab = "(a1*b2 - a2*b1)";
    let want_r = [format!("-2*b3/y^2*{ab}"), format!("2*a3/y^2*{ab}"), "0".into()];
    let g_yz = "(a2*a3 + b2*b3 + c2*c3)";
    let g_xz = "(a1*a3 + b1*b3 + c1*c3)";
    let want_g = ["a", "b", "c"].map(|c| format!("{g_yz}*{c}1 - {g_xz}*{c}2"));
    let want_n1 = [format!("4/y^3*{ab}*b3"), format!("-4/y^3*{ab}*a3"), "0".into()];
    for m in 0..3 {
        ensure!(p.r_xyz[m] == expected(&want_r[m]), "R(X,Y)Z^E{} = {}", m + 1, p.r_xyz[m]);
        ensure!(p.g_xyz[m] == expected(&want_g[m]), "G(X,Y)Z^E{} = {}", m + 1, p.g_xyz[m]);
        ensure!(p.nabla_r[0][m] == expected(&want_n1[m]), "∇_E1 R^E{} = {}", m + 1, p.nabla_r[0][m]);
        ensure!(p.nabla_r[1][m].is_zero() && p.nabla_r[2][m].is_zero(), "∇_E2 R or ∇_E3 R nonzero");
    }
    let six = [
        (&p.u[0], format!("2*b3/y^2*{ab}")),
        (&p.u[1], format!("-2*a3/y^2*{ab}")),
        (&p.v[0], "a2*(b1*b3 + c1*c3) - a1*(b2*b3 + c2*c3)".to_string()),
        (&p.v[1], "b2*(a1*a3 + c1*c3) - b1*(a2*a3 + c2*c3)".to_string()),
        (&p.p[0], format!("-4*b3/y^3*{ab}")),
        (&p.q[0], format!("4*a3/y^3*{ab}")),
    ];
    for (got, want) in &six {
        ensure!(**got == expected(want), "{got} != {want}");
    }
    for i in 1..3 {
        ensure!(p.p[i].is_zero() && p.q[i].is_zero(), "p{0} or q{0} nonzero", i + 1);
    }
    for id in ["PIPE-5.1", "PIPE-5.2", "PIPE-5.3", "PIPE-5.4", "PIPE-5.5", "PIPE-5.6", "PIPE-5.7"] {
        ensure!(p.check(id).unwrap().passed(), "{id} did not pass");
    }
    Ok("R, G, ∇R, u, v, p, q exact, p2=q2=p3=q3=0".into())
}

fn recurrence_solve() -> Outcome {
    let opts = Options {
        kind: Some(RecurrenceKind::Phi),
        ..Options::default()
    };
    let doc = run(Suite::Recurrence, corpus::bundled("example3d").unwrap(), &opts).map_err(|e| e.to_string())?;
    ensure!(doc.solutions.a.as_deref() == Some(&["-2/y".into(), "0".into(), "0".into()][..]), "A = {:?}", doc.solutions.a);
    ensure!(doc.solutions.b.as_deref() == Some(&["0".into(), "0".into(), "0".into()][..]), "B = {:?}", doc.solutions.b);
    ensure!(
        doc.classification.as_deref() == Some("φ-recurrent, not φ-symmetric"),
        "classification {:?}",
        doc.classification
    );
    ensure!(doc.check("REC-PHI").unwrap().verdict == "pass", "REC-PHI verdict");
    ensure!(doc.exit_code() == 0, "exit code {}", doc.exit_code());

    let (frame, cs) = bundled("example3d");
    let curv = CurvatureData::new(&frame);
    let sol = solve_recurrence(RecurrenceKind::Phi, &frame, &curv, cs.as_ref(), Projector::Phi2).unwrap();
    ensure!(sol.directions[0].status == DirectionStatus::Unique, "E1 direction not unique");
    let pipe = run(Suite::Pipeline, corpus::bundled("example3d").unwrap(), &Options::default()).unwrap();
    let c = pipe.check("PIPE-5.8").unwrap();
    ensure!(c.verdict == "fail" && c.residual_symbolic == "u1*q1 - u2*p1 = 0", "PIPE-5.8: {c:?}");
    Ok("A = (-2/y, 0, 0), B = 0, φ-recurrent; PIPE-5.8 u1*q1 - u2*p1 ≡ 0".into())
}

fn golden_sphere() -> Outcome {
    let text = corpus::bundled("sphere3").unwrap();
    let axioms = run(Suite::Axioms, text, &Options::default()).map_err(|e| e.to_string())?;
    for c in &axioms.checks {
        ensure!(c.verdict == "pass", "{} is {}", c.id, c.verdict);
    }
    let (frame, cs) = bundled("sphere3");
    let cs = cs.unwrap();
    let curv = CurvatureData::new(&frame);
    let kmu = extract_k_mu(&frame, &curv, &cs, cs.h());
    ensure!(kmu.k == Param::Value(RatFn::from_int(1)), "k = {}", kmu.k);
    ensure!(kmu.mu == Param::Indeterminate, "mu = {}", kmu.mu);
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { RatFn::from_int(2) } else { RatFn::zero() };
            ensure!(curv.ricci[i][j] == want, "S(E{},E{}) = {}", i + 1, j + 1, curv.ricci[i][j]);
        }
    }
    ensure!(curv.scalar == RatFn::from_int(6), "r = {}", curv.scalar);
    let opts = Options {
        mu: Some("-2".into()),
        ..Options::default()
    };
    let ids = run(Suite::Identities, text, &opts).map_err(|e| e.to_string())?;
    for id in ["I3.9", "I3.10", "I3.11"] {
        let c = ids.check(id).ok_or(format!("{id} missing"))?;
        ensure!(c.verdict == "pass", "{id} is {}", c.verdict);
    }
    let sol = solve_recurrence(RecurrenceKind::Full, &frame, &curv, None, Projector::Phi2).unwrap();
    ensure!(sol.classification == Classification::Symmetric, "REC-FULL {:?}", sol.classification);
    for w in 0..3 {
        ensure!(curvature::nabla_riemann_tensor(&frame, &curv.riemann, w).is_zero(), "∇R ≠ 0");
    }
    Ok("axioms pass, k = 1, mu indeterminate, S = 2g, r = 6, I3.9-I3.11 pass, symmetric".into())
}

fn flat_baseline() -> Outcome {
    let (frame, cs) = bundled("flat3");
    for i in 0..3 {
        for j in 0..3 {
            ensure!(frame.gamma(i, j).iter().all(RatFn::is_zero), "Γ nonzero");
        }
    }
    let curv = CurvatureData::new(&frame);
    ensure!(curv.riemann.is_zero(), "R nonzero");
    for kind in [RecurrenceKind::Full, RecurrenceKind::Ricci, RecurrenceKind::Phi] {
        let sol = solve_recurrence(kind, &frame, &curv, cs.as_ref(), Projector::Phi2).unwrap();
        ensure!(
            sol.classification == Classification::Symmetric && sol.degenerate,
            "{kind:?}: {}",
            sol.description()
        );
        ensure!(sol.report(&Sampler::none()).verdict == Verdict::Degenerate, "{kind:?} verdict");
    }
    Ok("Γ ≡ 0, R ≡ 0, full/ricci/phi degenerate-symmetric".into())
}

fn cmverify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cmverify")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn audit_findings() -> Outcome {
    let text = corpus::bundled("example3d").unwrap();
    let axioms = run(Suite::Axioms, text, &Options::default()).map_err(|e| e.to_string())?;
    let verdict = |id: &str| axioms.check(id).map(|c| c.verdict.clone()).unwrap_or_default();
    ensure!(verdict("I2.1") == "fail", "I2.1 {}", verdict("I2.1"));
    ensure!(verdict("I2.4[h:declared]") == "fail", "I2.4[h:declared] {}", verdict("I2.4[h:declared]"));
    ensure!(verdict("I2.4[h:computed]") == "fail", "I2.4[h:computed] {}", verdict("I2.4[h:computed]"));
    ensure!(verdict("H-DECL") == "fail", "H-DECL {}", verdict("H-DECL"));

    let (frame, cs) = bundled("example3d");
    let cs = cs.unwrap();
    ensure!(cs.h_computed.iter().flatten().all(RatFn::is_zero), "computed h ≠ 0");
    ensure!(cs.h_declared.as_ref() != Some(&cs.h_computed), "declared h equals computed h");

    let curv = CurvatureData::new(&frame);
    let declared_value = -RatFn::one() / RatFn::var("y");
    let extracted = extract_k_mu(&frame, &curv, &cs, cs.h());
    ensure!(
        extracted.k.value() != Some(&declared_value) || extracted.mu.value() != Some(&declared_value),
        "extraction agrees with -1/y"
    );
    let declared = NullityParams::declared(Param::Value(declared_value.clone()), Param::Value(declared_value));
    let i31 = identity_check("I3.1", "", &frame, &curv, &cs, cs.h(), &declared, &Sampler::none());
    ensure!(i31.verdict == Verdict::Fail, "nullity condition holds with -1/y");

    let kmu = run(Suite::Kmu, text, &Options::default()).unwrap();
    ensure!(kmu.check("KMU[h:declared]").unwrap().verdict == "fail", "KMU[h:declared] not failing");

    let vector = parse_spec(corpus::bundled("example3d-vector").unwrap()).unwrap();
    ensure!(matches!(vector.mode, FrameMode::Coordinate { .. }), "vector spec mode");
    ensure!(
        matches!(Frame::new(vector.frame_spec()), Err(Error::FrameDependent { .. })),
        "example3d-vector not FrameDependent"
    );

    let codes = [
        (vec!["check", "axioms", "example3d"], 2),
        (vec!["check", "axioms", "sphere3"], 0),
        (vec!["solve", "recurrence", "--kind", "phi", "example3d"], 0),
        (vec!["check", "identities", "example3d", "--k", "-1/y", "--mu", "-1/y"], 2),
        (vec!["check", "frame", "example3d-vector"], 2),
        (vec!["all", "example3d-vector"], 1),
    ];
    for (args, want) in codes {
        let (code, _) = cmverify(&args);
        ensure!(code == want, "`cmverify {}` exited {code}, expected {want}", args.join(" "));
    }
    Ok("I2.1, I2.4, H-DECL, KMU fail; h computed = 0; vector frame dependent; exit codes fixed".into())
}

fn random_entry(rng: &mut ChaCha8Rng) -> RatFn {
    let vars = ["x", "y", "z"];
    let mut out = RatFn::zero();
    for _ in 0..rng.gen_range(0..=2) {
        let mut t = RatFn::from_int(rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(0..=2) {
            t = &t * &RatFn::var(vars[rng.gen_range(0..3)]);
        }
        out = &out + &t;
    }
    out
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let coords: Vec<Symbol> = ["x", "y", "z"].iter().map(|s| Symbol::new(s)).collect();
    let sampler = Sampler::new(&coords, &[], &[], 4, 8);
    for case in 0..PROPERTY_CASES {
        let mut a = identity(3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            a[i][j] = random_entry(&mut rng);
        }
        let frame = Frame::new(FrameSpec {
            coords: coords.clone(),
            params: vec![],
            exclusions: vec![],
            mode: FrameMode::Coordinate { a },
            metric: identity(3),
        })
        .map_err(|e| format!("case {case}: {e}"))?;
        let curv = CurvatureData::new(&frame);
        let nr: Vec<_> = (0..3).map(|w| curvature::nabla_riemann_tensor(&frame, &curv.riemann, w)).collect();
        let mut residuals = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for m in 0..3 {
                    residuals.push(&(&frame.gamma(i, j)[m] - &frame.gamma(j, i)[m]) - &frame.bracket(i, j)[m]);
                }
                for k in 0..3 {
                    let compat = &frame.apply(i, &frame.metric()[j][k])
                        - &(&frame.pairing(frame.gamma(i, j), &frame.basis(k))
                            + &frame.pairing(&frame.basis(j), frame.gamma(i, k)));
                    residuals.push(compat);
                    let low = |a: usize, b: usize, c: usize, d: usize| {
                        frame.pairing(&curv.component(a, b, c), &frame.basis(d))
                    };
                    for l in 0..3 {
                        residuals.push(&low(i, j, k, l) + &low(j, i, k, l));
                        residuals.push(&low(i, j, k, l) + &low(i, j, l, k));
                        residuals.push(&low(i, j, k, l) - &low(k, l, i, j));
                        let b1 = curv.riemann.get(&[i, j, k, l]) + curv.riemann.get(&[j, k, i, l]);
                        residuals.push(&b1 + curv.riemann.get(&[k, i, j, l]));
                        for z in 0..3 {
                            let b2 = nr[i].get(&[j, k, z, l]) + nr[j].get(&[k, i, z, l]);
                            residuals.push(&b2 + nr[k].get(&[i, j, z, l]));
                        }
                    }
                }
            }
        }
        let nonzero: Vec<RatFn> = residuals.into_iter().filter(|r| !r.is_zero()).collect();
        ensure!(nonzero.is_empty(), "case {case}: {} nonzero residuals, first {}", nonzero.len(), nonzero[0]);
        let max = sampler.max_abs(&nonzero).unwrap_or(0.0);
        ensure!(max <= SAMPLE_TOL, "case {case}: sampled {max}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < PROPERTY_BUDGET, "took {elapsed:?}");
    Ok(format!(
        "{PROPERTY_CASES} frames: torsion, metric, symmetries, Bianchi I/II exact, {elapsed:.2?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("connection table", connection_table),
        ("curvature components", curvature_components),
        ("parametric pipeline", parametric_pipeline),
        ("recurrence solve", recurrence_solve),
        ("golden Sasakian sphere", golden_sphere),
        ("flat baseline", flat_baseline),
        ("audit findings", audit_findings),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
