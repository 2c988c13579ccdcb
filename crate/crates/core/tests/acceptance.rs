//! Acceptance run: one PASS/FAIL line per criterion with its time limit.
//! Runs without the libtest harness so the lines show up in `cargo test`.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use posetop::complex::{
    barycentric_complex, barycentric_poset, face_poset, order_complex, order_complex_of,
};
use posetop::cylinder::{build_cylinder, mapping_cylinder, verify_theorem_a, Status};
use posetop::homology::{
    betti_by_rational_rank, compare, homology, p_torsion_count, subposet_homology, HomologyGroup,
};
use posetop::map::Relation;
use posetop::mapper::{filter, mapper_completion, IntervalCover, PointCloud};
use posetop::nerve::{
    classify_cover, completion_poset, nerve, nerve_poset, nerve_relation, verify_nerve_theorem,
    x_zero, ComplexCover, CoverStatus, NerveVariant,
};
use posetop::random::Generator;
use posetop::reduction::{
    collapse_search_within, core_of, translate_poset_certificate, CollapseOutcome, ReductionStep,
};
use posetop::{
    Budget, ElementSet, Poset, ReductionCertificate, SimplicialComplex, TrivialityOracle,
};

type Outcome = Result<String, String>;

/// Certificates produced along the way, re-checked step by step at the end.
enum Produced {
    Poset(Poset, ElementSet, ReductionCertificate),
    Complex(SimplicialComplex, ReductionCertificate),
}

struct Run {
    oracle: TrivialityOracle,
    produced: Vec<Produced>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn triangle_boundary_cover() -> ComplexCover {
    let k = SimplicialComplex::from_facets([["u", "v"], ["v", "w"], ["u", "w"]]).unwrap();
    let l = SimplicialComplex::from_facets([["u", "w"], ["v", "w"]]).unwrap();
    let t = SimplicialComplex::from_facets([["u", "v"]]).unwrap();
    ComplexCover::new(k, vec![("L".into(), l), ("T".into(), t)]).unwrap()
}

fn example_completion(_: &mut Run) -> Outcome {
    let cover = triangle_boundary_cover();
    let pc = cover.to_poset_cover();
    let cw = completion_poset(&pc).map_err(err)?.cw().map_err(err)?;
    ensure(cw.f_vector() == vec![2, 2], || {
        format!("completion f-vector {:?}", cw.f_vector())
    })?;
    let h = homology(&cw, false);
    ensure(
        h.degrees == vec![HomologyGroup::free(1), HomologyGroup::free(1)],
        || format!("completion homology {:?}", h.betti_numbers()),
    )?;
    let n = nerve(&pc);
    ensure(n.f_vector() == vec![2, 1], || {
        format!("nerve f-vector {:?}", n.f_vector())
    })?;
    ensure(homology(&n, true).is_acyclic(), || {
        "nerve is not acyclic".into()
    })?;
    Ok("completion f = (2, 2), H = (Z, Z); nerve is one edge".into())
}

fn mapping_cylinders(run: &mut Run) -> Outcome {
    for seed in 0..200u64 {
        let mut g = Generator::new(seed);
        let x = g.poset_up_to("x", 1, 8);
        let y = g.poset_up_to("y", 1, 8);
        let f = g.monotone_map(&x, &y);
        let (c, cert) = mapping_cylinder(&f).map_err(err)?;
        let order: Vec<&str> = cert.steps.iter().filter_map(|s| s.element()).collect();
        let expected: Vec<String> = x
            .linear_extension()
            .into_iter()
            .rev()
            .map(|id| posetop::cylinder::source_id(&id))
            .collect();
        ensure(
            cert.steps
                .iter()
                .all(|s| matches!(s, ReductionStep::UpBeat { .. }))
                && order == expected,
            || format!("seed {seed}: not up beat deletions in decreasing order"),
        )?;
        let start = c.poset().full_set();
        let end = cert.replay(c.poset(), &start).map_err(err)?;
        ensure(end == c.target_set(), || {
            format!("seed {seed}: does not end at Y")
        })?;
        ensure(compare(c.poset(), &y).equal, || {
            format!("seed {seed}: H(B(f)) != H(Y)")
        })?;
        run.produced
            .push(Produced::Poset(c.poset().clone(), start, cert));
    }
    Ok("200 maps retract onto Y".into())
}

fn theorem_a(run: &mut Run) -> Outcome {
    for seed in 0..100u64 {
        let mut g = Generator::new(1_000 + seed);
        let r = g.certified_relation(8, &run.oracle);
        let a = verify_theorem_a(&r, &run.oracle).map_err(err)?;
        ensure(a.status == Status::Certified, || {
            format!("seed {seed}: {:?}", a.status)
        })?;
        let c = build_cylinder(&r);
        let start = c.poset().full_set();
        let (Some(to_x), Some(to_y)) = (a.to_x, a.to_y) else {
            return Err(format!("seed {seed}: a certificate is missing"));
        };
        ensure(
            to_x.replay(c.poset(), &start).map_err(err)? == c.source_set()
                && to_y.replay(c.poset(), &start).map_err(err)? == c.target_set(),
            || format!("seed {seed}: certificate ends on the wrong side"),
        )?;
        ensure(compare(r.source(), r.target()).equal, || {
            format!("seed {seed}: H(X) != H(Y)")
        })?;
        run.produced
            .push(Produced::Poset(c.poset().clone(), start.clone(), to_x));
        run.produced
            .push(Produced::Poset(c.poset().clone(), start, to_y));
    }
    let p = Poset::antichain(["p"]).unwrap();
    let t = Poset::antichain(["a", "b"]).unwrap();
    let r = Relation::new(p, t, [("p", "a"), ("p", "b")]).unwrap();
    let status = verify_theorem_a(&r, &run.oracle).map_err(err)?.status;
    ensure(status == Status::Refuted, || {
        format!("refutation fixture gave {status:?}")
    })?;
    Ok("100 relations certified; refutation fixture refuted".into())
}

fn nerve_theorems(run: &mut Run) -> Outcome {
    let mut quasi_strict = 0;
    for seed in 0..100u64 {
        let mut g = Generator::new(2_000 + seed);
        let c = g.good_cover(12, &run.oracle);
        ensure(c.base().len() <= 12, || {
            format!("seed {seed}: base too large")
        })?;
        ensure(compare(c.base(), &nerve(&c)).equal, || {
            format!("seed {seed}: H(X) != H(N(U))")
        })?;
        let x0 = x_zero(&c, &run.oracle);
        let np = nerve_poset(&c);
        ensure(
            x0.undecided.is_empty()
                && x0.poset.ids() == np.ids()
                && x0.poset.hasse_edges() == np.hasse_edges(),
            || format!("seed {seed}: X_0 differs from the nerve poset"),
        )?;
        for x in c.base().ids() {
            let ix = x0.i_x(&c, x).map_err(err)?;
            ensure(x0.poset.maximum_in(&ix).is_some(), || {
                format!("seed {seed}: I_{x} has no maximum")
            })?;
        }
        let report = verify_nerve_theorem(&c, NerveVariant::GoodPoset, &run.oracle).map_err(err)?;
        ensure(report.status == Status::Certified, || {
            format!("seed {seed}: good cover not certified")
        })?;
        collect_nerve(run, &c, NerveVariant::GoodPoset, report.theorem_a)?;
    }
    for seed in 0..100u64 {
        let mut g = Generator::new(3_000 + seed);
        let c = g.quasi_good_cover(12, &run.oracle);
        ensure(c.base().len() <= 12, || {
            format!("seed {seed}: base too large")
        })?;
        if classify_cover(&c, &run.oracle).status == CoverStatus::QuasiGood {
            quasi_strict += 1;
        }
        let cw = completion_poset(&c).map_err(err)?.cw().map_err(err)?;
        ensure(compare(c.base(), &cw).equal, || {
            format!("seed {seed}: H(X) != H(completion)")
        })?;
        let report = verify_nerve_theorem(&c, NerveVariant::QuasiGood, &run.oracle).map_err(err)?;
        ensure(report.status == Status::Certified, || {
            format!("seed {seed}: quasi-good cover not certified")
        })?;
        collect_nerve(run, &c, NerveVariant::QuasiGood, report.theorem_a)?;
    }
    Ok(format!(
        "100 good and 100 quasi-good covers ({quasi_strict} not good)"
    ))
}

fn collect_nerve(
    run: &mut Run,
    c: &posetop::nerve::PosetCover,
    variant: NerveVariant,
    a: Option<posetop::cylinder::TheoremAReport>,
) -> Result<(), String> {
    let Some(a) = a else { return Ok(()) };
    let r = nerve_relation(c, variant, &run.oracle).map_err(err)?;
    let cyl = build_cylinder(&r);
    for cert in [a.to_x, a.to_y].into_iter().flatten() {
        run.produced.push(Produced::Poset(
            cyl.poset().clone(),
            cyl.poset().full_set(),
            cert,
        ));
    }
    Ok(())
}

fn dictionary(run: &mut Run) -> Outcome {
    let budget = run.oracle.budget();
    let mut translated = 0;
    for seed in 0..100u64 {
        let mut g = Generator::new(4_000 + seed);
        let p = if seed % 2 == 0 {
            g.poset_up_to("e", 2, 9)
        } else {
            let k = g.complex(5, 3, 2);
            ensure(compare(&k, &barycentric_complex(&k)).equal, || {
                format!("seed {seed}: H(K) != H(K')")
            })?;
            face_poset(&k)
        };
        ensure(compare(&p, &barycentric_poset(&p)).equal, || {
            format!("seed {seed}: H(X) != H(X')")
        })?;
        ensure(
            order_complex(&p).canonical_form() == order_complex(&p.opposite()).canonical_form(),
            || format!("seed {seed}: K(X) != K(X^op)"),
        )?;
        let full = p.full_set();
        let (core, dismantling) = core_of(&p, &full).map_err(err)?;
        let mut certs = vec![(dismantling, core)];
        if homology(&p, true).is_acyclic() {
            if let CollapseOutcome::Found { certificate } =
                collapse_search_within(&p, &full, None, budget).map_err(err)?
            {
                let end = certificate.replay(&p, &full).map_err(err)?;
                certs.push((certificate, end));
            }
        }
        for (cert, end) in certs {
            let Some(simplicial) =
                translate_poset_certificate(&p, &full, &cert, budget).map_err(err)?
            else {
                return Err(format!("seed {seed}: translation ran out of budget"));
            };
            let k = order_complex(&p);
            let got = simplicial.replay_complex(&k).map_err(err)?;
            ensure(
                got.canonical_form() == order_complex_of(&p, &end).map_err(err)?.canonical_form(),
                || format!("seed {seed}: simplicial collapse ends elsewhere"),
            )?;
            translated += cert.len();
            run.produced.push(Produced::Complex(k, simplicial));
            run.produced
                .push(Produced::Poset(p.clone(), full.clone(), cert));
        }
    }
    Ok(format!(
        "100 instances; {translated} poset steps translated"
    ))
}

/// Euler characteristic of `K(S)` by counting chains: `f(x)` is the signed
/// number of chains of `S` with top `x`.
fn chain_euler(p: &Poset, s: &ElementSet) -> i64 {
    let mut f = vec![0i64; p.len()];
    for x in p.linear_extension_of(s) {
        f[x] = 1 - s.iter().filter(|&y| p.lt(y, x)).map(|y| f[y]).sum::<i64>();
    }
    s.iter().map(|x| f[x]).sum()
}

fn poset_steps(
    p: &Poset,
    start: &ElementSet,
    cert: &ReductionCertificate,
    count: &mut usize,
) -> Result<(), String> {
    let states = cert.trace(p, start).map_err(err)?;
    let homologies = states
        .iter()
        .map(|s| subposet_homology(p, s, false).map_err(err))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, step) in cert.steps.iter().enumerate() {
        let a = &states[i];
        let (ha, hb) = (&homologies[i], &homologies[i + 1]);
        let (ea, eb) = (chain_euler(p, a), chain_euler(p, &states[i + 1]));
        ensure(ha == hb && ea == eb, || {
            format!(
                "{} step on `{}` changes homology",
                step.kind(),
                step.element().unwrap_or("")
            )
        })?;
        *count += 1;
        if let (Some(w), Some(e)) = (step.nested(), step.element()) {
            let x = p.index_of(e).map_err(err)?;
            let punctured = match step {
                ReductionStep::UpWeak { .. } | ReductionStep::GammaUp { .. } => {
                    p.punctured_up_of(x)
                }
                _ => p.punctured_down_of(x),
            };
            poset_steps(p, &punctured.intersection(a), w, count)?;
        }
    }
    Ok(())
}

fn complex_steps(
    k: &SimplicialComplex,
    cert: &ReductionCertificate,
    count: &mut usize,
) -> Result<(), String> {
    let states: Vec<_> = cert
        .trace_complex(k)
        .map_err(err)?
        .iter()
        .map(|s| (s.euler_characteristic(), homology(s, false)))
        .collect();
    for pair in states.windows(2) {
        ensure(pair[0] == pair[1], || {
            "free face collapse changes homology".into()
        })?;
        *count += 1;
    }
    Ok(())
}

fn step_soundness(run: &mut Run) -> Outcome {
    // the weak collapse of a poset with no beat points exercises weak steps
    let p = Poset::from_relations(
        Vec::<&str>::new(),
        [
            ("a0", "b0"),
            ("a0", "b2"),
            ("a1", "b0"),
            ("a1", "b1"),
            ("a2", "b1"),
            ("a2", "b2"),
            ("a3", "b0"),
            ("a3", "b2"),
            ("b0", "c2"),
            ("b0", "c3"),
            ("b1", "c1"),
            ("b1", "c2"),
            ("b1", "c3"),
            ("b2", "c1"),
            ("b2", "c3"),
        ],
    )
    .map_err(err)?;
    let full = p.full_set();
    let CollapseOutcome::Found { certificate } =
        collapse_search_within(&p, &full, None, run.oracle.budget()).map_err(err)?
    else {
        return Err("no weak collapse for the beat-free poset".into());
    };
    run.produced.push(Produced::Poset(p, full, certificate));
    let counts = run
        .produced
        .par_iter()
        .map(|produced| {
            let mut n = 0;
            match produced {
                Produced::Poset(p, start, cert) => {
                    poset_steps(p, start, cert, &mut n).map(|_| (n, 0))
                }
                Produced::Complex(k, cert) => complex_steps(k, cert, &mut n).map(|_| (0, n)),
            }
        })
        .collect::<Result<Vec<_>, String>>()?;
    let poset: usize = counts.iter().map(|c| c.0).sum();
    let simplicial: usize = counts.iter().map(|c| c.1).sum();
    Ok(format!(
        "{poset} poset steps and {simplicial} free face collapses checked"
    ))
}

fn oracle_fixtures(_: &mut Run) -> Outcome {
    let z = HomologyGroup::free;
    let torsion = |t: u64| HomologyGroup {
        betti: 0,
        torsion: vec![t],
    };
    let rp2 = SimplicialComplex::from_facets([
        ["1", "2", "3"],
        ["1", "3", "4"],
        ["1", "4", "5"],
        ["1", "5", "6"],
        ["1", "2", "6"],
        ["2", "3", "5"],
        ["3", "4", "6"],
        ["2", "4", "5"],
        ["3", "5", "6"],
        ["2", "4", "6"],
    ])
    .map_err(err)?;
    let torus_facets: Vec<[String; 3]> = (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .map(|f| f.map(|v: usize| v.to_string()))
        .collect();
    let torus = SimplicialComplex::from_facets(torus_facets).map_err(err)?;
    let cases = [
        (
            "6-cycle",
            SimplicialComplex::cycle(&["a", "b", "c", "d", "e", "f"]).map_err(err)?,
            vec![z(1), z(1)],
            0,
        ),
        (
            "boundary of the 3-simplex",
            SimplicialComplex::simplex_boundary(["a", "b", "c", "d"]).map_err(err)?,
            vec![z(1), z(0), z(1)],
            0,
        ),
        ("RP2", rp2, vec![z(1), torsion(2)], 1),
        ("torus", torus, vec![z(1), z(2), z(1)], 0),
    ];
    for (name, k, expected, two_torsion) in cases {
        let h = homology(&k, false);
        ensure(h.degrees == expected, || format!("{name}: {:?}", h.degrees))?;
        let betti: Vec<usize> = expected.iter().map(|g| g.betti).collect();
        let mut trimmed = betti.clone();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        ensure(betti_by_rational_rank(&k) == trimmed, || {
            format!("{name}: rational rank path disagrees")
        })?;
        for d in 0..expected.len() {
            let want = if d == 1 { two_torsion } else { 0 };
            ensure(p_torsion_count(&k, d, 2) == want, || {
                format!("{name}: 2-torsion in degree {d}")
            })?;
            ensure(p_torsion_count(&k, d, 3) == 0, || {
                format!("{name}: 3-torsion in degree {d}")
            })?;
        }
    }
    Ok("6-cycle, boundary of the 3-simplex, RP2, torus".into())
}

fn mapper_demo(_: &mut Run) -> Outcome {
    let pc = PointCloud::noisy_circle(60, 2);
    let f = filter("x").map_err(err)?;
    let cover = IntervalCover::new(4, 0.3).map_err(err)?;
    let m = mapper_completion(&pc, f.as_ref(), &cover, 0.25).map_err(err)?;
    let h = m.homology();
    ensure(h.completion.betti(1) == 1, || {
        format!("completion betti {:?}", h.completion.betti_numbers())
    })?;
    ensure(h.nerve.betti(1) == 0, || {
        format!("nerve betti {:?}", h.nerve.betti_numbers())
    })?;
    Ok(format!(
        "nerve betti {:?}, completion betti {:?}",
        h.nerve.betti_numbers(),
        h.completion.betti_numbers()
    ))
}

type Criterion = (&'static str, u64, fn(&mut Run) -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "completion of the boundary of a triangle",
            1,
            example_completion,
        ),
        ("mapping cylinder retraction", 30, mapping_cylinders),
        ("relation cylinder theorem", 60, theorem_a),
        ("nerve theorems", 60, nerve_theorems),
        ("poset and complex dictionary", 60, dictionary),
        ("reduction step soundness", 120, step_soundness),
        ("homology oracle fixtures", 10, oracle_fixtures),
        ("mapper on a circle sample", 5, mapper_demo),
    ];
    let mut run = Run {
        oracle: TrivialityOracle::new(Budget::DEFAULT),
        produced: Vec::new(),
    };
    let total = Instant::now();
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check(&mut run);
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}, but over the {limit} s limit"))
            }
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!(
            "criterion {}: {tag} {name} ({:.2} s, limit {limit} s): {detail}",
            n + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of 8 passed in {:.1} s",
        8 - failed,
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
