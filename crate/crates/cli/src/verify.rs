//! Theorem verifiers, looked up by id. Each reads a fixture directory and
//! fills a [`RunReport`].

use std::path::{Path, PathBuf};
use std::sync::Arc;

use posetop::complex::{
    barycentric_complex, barycentric_poset, face_poset, order_complex, order_complex_of,
};
use posetop::cylinder::{
    build_cylinder, certificate_to_x, certificate_to_y, check_hypothesis_x, check_hypothesis_y,
    verify_homology_version, verify_theorem_a, Status, TheoremAReport,
};
use posetop::homology::{compare, homology};
use posetop::map::Relation;
use posetop::nerve::{
    nerve_relation, verify_corollary_completion, verify_nerve_theorem, NerveVariant, PosetCover,
};
use posetop::reduction::{
    collapse_search_within, core_of, translate_poset_certificate, CollapseOutcome,
};
use posetop::{io, Error, Poset, SimplicialComplex, TrivialityOracle};

use crate::report::{Attachment, ReportStatus, RunReport};

pub struct Context {
    pub oracle: TrivialityOracle,
    pub degree: Option<usize>,
    /// Replace poset cover parts by their open hulls instead of rejecting them.
    pub open_hull: bool,
}

pub trait Verifier: Send + Sync {
    fn id(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error>;
}

pub fn registry() -> Vec<Arc<dyn Verifier>> {
    vec![
        Arc::new(OneSided { to_source: true }),
        Arc::new(OneSided { to_source: false }),
        Arc::new(TheoremA),
        Arc::new(HomologyVersion),
        Arc::new(Nerve(NerveVariant::GoodPoset)),
        Arc::new(Nerve(NerveVariant::XZero)),
        Arc::new(Nerve(NerveVariant::QuasiGood)),
        Arc::new(CompletionCorollary),
        Arc::new(Dictionary),
    ]
}

pub fn verifier(id: &str) -> Option<Arc<dyn Verifier>> {
    registry().into_iter().find(|v| v.id() == id)
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|v| v.id()).collect()
}

/// First existing `<stem>.txt` or `<stem>.json` in `dir`.
pub fn find(dir: &Path, stem: &str) -> Option<PathBuf> {
    ["txt", "json"]
        .iter()
        .map(|ext| dir.join(format!("{stem}.{ext}")))
        .find(|p| p.is_file())
}

fn require(dir: &Path, stem: &str) -> Result<PathBuf, Error> {
    find(dir, stem).ok_or_else(|| {
        Error::Invalid(format!(
            "{} has no {stem}.txt or {stem}.json",
            dir.display()
        ))
    })
}

/// `source`, `target` and either `relation` or `map`; a JSON relation or map
/// may embed its posets instead.
pub fn load_relation(dir: &Path, report: &mut RunReport) -> Result<Relation, Error> {
    let posets = match (find(dir, "source"), find(dir, "target")) {
        (Some(s), Some(t)) => {
            let s = io::parse_poset(&report.read(&s)?)?;
            let t = io::parse_poset(&report.read(&t)?)?;
            Some((s, t))
        }
        _ => None,
    };
    if let Some(path) = find(dir, "relation") {
        return io::parse_relation(&report.read(&path)?, posets);
    }
    if let Some(path) = find(dir, "map") {
        return Ok(Relation::from_map(&io::parse_map(
            &report.read(&path)?,
            posets,
        )?));
    }
    Err(Error::Invalid(format!(
        "{} has no relation or map file",
        dir.display()
    )))
}

pub enum Base {
    Poset(Poset),
    Complex(SimplicialComplex),
}

pub fn load_base(dir: &Path, report: &mut RunReport) -> Result<Base, Error> {
    if let Some(path) = find(dir, "complex") {
        return Ok(Base::Complex(io::parse_complex(&report.read(&path)?)?));
    }
    let path = require(dir, "poset")?;
    Ok(Base::Poset(io::parse_poset(&report.read(&path)?)?))
}

pub fn load_poset_cover(
    dir: &Path,
    open_hull: bool,
    report: &mut RunReport,
) -> Result<PosetCover, Error> {
    let base = load_base(dir, report)?;
    let text = report.read(&require(dir, "cover")?)?;
    Ok(match base {
        Base::Poset(p) => io::parse_poset_cover_with(p, &text, open_hull)?,
        Base::Complex(k) => io::parse_complex_cover(k, &text)?.to_poset_cover(),
    })
}

fn attach_theorem_a(report: &mut RunReport, r: &Relation, a: &TheoremAReport) {
    let c = build_cylinder(r);
    if let Some(cert) = &a.to_x {
        report.attach(
            "cylinder-to-source",
            Attachment::Poset {
                poset: c.poset().clone(),
                start: c.poset().full_set(),
                end: c.source_set(),
            },
            cert.clone(),
        );
    }
    if let Some(cert) = &a.to_y {
        report.attach(
            "cylinder-to-target",
            Attachment::Poset {
                poset: c.poset().clone(),
                start: c.poset().full_set(),
                end: c.target_set(),
            },
            cert.clone(),
        );
    }
}

/// Gamma collapse of the cylinder onto one side under the one hypothesis
/// that side needs.
struct OneSided {
    to_source: bool,
}

impl Verifier for OneSided {
    fn id(&self) -> &'static str {
        if self.to_source {
            "prop-2.4"
        } else {
            "prop-2.5"
        }
    }

    fn summary(&self) -> &'static str {
        if self.to_source {
            "B(R) collapses onto X when every open hull of R^-1(U_y) is trivial"
        } else {
            "B(R) collapses onto Y when every closure of R(F_x) is trivial"
        }
    }

    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error> {
        let r = load_relation(dir, report)?;
        let c = build_cylinder(&r);
        let hypothesis = if self.to_source {
            check_hypothesis_x(&r, &ctx.oracle)
        } else {
            check_hypothesis_y(&r, &ctx.oracle)
        };
        report.status = hypothesis.status.into();
        let side = if self.to_source { "X" } else { "Y" };
        report.line(format!(
            "hypothesis for collapsing onto {side}: {}",
            hypothesis.status
        ));
        if let Some(e) = hypothesis.first_failure() {
            report.line(format!(
                "  first failure at `{}`: {}",
                e.element, e.verdict.value
            ));
        }
        if hypothesis.status == Status::Certified {
            let (cert, end) = if self.to_source {
                (certificate_to_x(&c, &hypothesis)?, c.source_set())
            } else {
                (certificate_to_y(&c, &hypothesis)?, c.target_set())
            };
            report.line(format!("gamma certificate with {} steps", cert.len()));
            report.attach(
                format!(
                    "cylinder-to-{}",
                    if self.to_source { "source" } else { "target" }
                ),
                Attachment::Poset {
                    poset: c.poset().clone(),
                    start: c.poset().full_set(),
                    end,
                },
                cert,
            );
            let side_poset = if self.to_source {
                c.source()
            } else {
                c.target()
            };
            let h = compare(c.poset(), side_poset);
            if !h.equal {
                return Err(Error::Inconsistent(
                    "cylinder and side differ in homology".into(),
                ));
            }
            report.homology.push(h);
        }
        report.set_result(&hypothesis);
        Ok(())
    }
}

struct TheoremA;

impl Verifier for TheoremA {
    fn id(&self) -> &'static str {
        "thm-a"
    }

    fn summary(&self) -> &'static str {
        "X and Y are simple homotopy equivalent when both hypotheses hold"
    }

    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error> {
        let r = load_relation(dir, report)?;
        let a = verify_theorem_a(&r, &ctx.oracle)?;
        report.status = a.status.into();
        report.line(format!("status: {}", a.status));
        for (side, h) in [("X", &a.hypothesis_x), ("Y", &a.hypothesis_y)] {
            report.line(format!(
                "  hypothesis for collapsing onto {side}: {}",
                h.status
            ));
            if let Some(e) = h.first_failure() {
                report.line(format!(
                    "    first failure at `{}`: {}",
                    e.element, e.verdict.value
                ));
            }
        }
        report.line(format!("  homology equal: {}", a.homology.equal));
        attach_theorem_a(report, &r, &a);
        report.homology.push(a.homology.clone());
        report.set_result(&a);
        Ok(())
    }
}

struct HomologyVersion;

impl Verifier for HomologyVersion {
    fn id(&self) -> &'static str {
        "prop-homology"
    }

    fn summary(&self) -> &'static str {
        "H_i(X) = H_i(Y) for i <= n when the hypothesis sets have vanishing reduced homology through n"
    }

    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error> {
        let n = ctx.degree.ok_or_else(|| {
            Error::Invalid("prop-homology needs a degree (--degree or the manifest)".into())
        })?;
        let r = load_relation(dir, report)?;
        let h = verify_homology_version(&r, n)?;
        report.status = h.status.into();
        report.line(format!("status through degree {n}: {}", h.status));
        if let Some(rows) = &h.agreement {
            for (i, a, b) in rows {
                report.line(format!("  H_{i}: {a} = {b}"));
            }
        }
        report.set_result(&h);
        Ok(())
    }
}

struct Nerve(NerveVariant);

impl Verifier for Nerve {
    fn id(&self) -> &'static str {
        match self.0 {
            NerveVariant::GoodPoset => "nerve-good",
            NerveVariant::XZero => "nerve-x0",
            NerveVariant::QuasiGood => "nerve-quasigood",
        }
    }

    fn summary(&self) -> &'static str {
        match self.0 {
            NerveVariant::GoodPoset => {
                "a good open cover: X is simple homotopy equivalent to the nerve poset"
            }
            NerveVariant::XZero => {
                "X is simple homotopy equivalent to X_0(U) when every I_x is trivial"
            }
            NerveVariant::QuasiGood => {
                "a quasi-good cover: X is simple homotopy equivalent to the completion"
            }
        }
    }

    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error> {
        let c = load_poset_cover(dir, ctx.open_hull, report)?;
        let n = verify_nerve_theorem(&c, self.0, &ctx.oracle)?;
        report.status = n.status.into();
        report.line(format!("cover: {}", n.cover));
        report.line(format!("status: {}", n.status));
        if let Some(reason) = &n.reason {
            report.line(format!("  {reason}"));
        }
        report.line(format!("  nerve object has {} elements", n.target.len()));
        if let Some(a) = &n.theorem_a {
            let r = nerve_relation(&c, self.0, &ctx.oracle)?;
            attach_theorem_a(report, &r, a);
        }
        report.homology.push(n.homology.clone());
        report.set_result(&n);
        Ok(())
    }
}

struct CompletionCorollary;

impl Verifier for CompletionCorollary {
    fn id(&self) -> &'static str {
        "cor-completion"
    }

    fn summary(&self) -> &'static str {
        "a quasi-good cover by subcomplexes: K has the homology of the completion"
    }

    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error> {
        let k = io::parse_complex(&report.read(&require(dir, "complex")?)?)?;
        let cover = io::parse_complex_cover(k, &report.read(&require(dir, "cover")?)?)?;
        let result = verify_corollary_completion(&cover, &ctx.oracle)?;
        report.status = result.status.into();
        report.line(format!("cover: {}", result.cover));
        report.line(format!("status: {}", result.status));
        report.line(format!("  completion f-vector: {:?}", result.f_vector));
        report.line(format!("  H(K) = {}", profile(&result.homology.left)));
        report.line(format!(
            "  H(completion) = {}",
            profile(&result.homology.right)
        ));
        if let Some(a) = &result.theorem.theorem_a {
            let r = nerve_relation(
                &cover.to_poset_cover(),
                NerveVariant::QuasiGood,
                &ctx.oracle,
            )?;
            attach_theorem_a(report, &r, a);
        }
        report.homology.push(result.homology.clone());
        report.set_result(&result);
        Ok(())
    }
}

pub fn profile(h: &posetop::HomologyProfile) -> String {
    let groups: Vec<String> = h.degrees.iter().map(|g| g.to_string()).collect();
    if groups.is_empty() {
        "0".into()
    } else {
        format!("({})", groups.join(", "))
    }
}

/// Barycentric invariance, collapse translation and the order complex of
/// the opposite poset, on a poset or on the face poset of a complex.
struct Dictionary;

impl Verifier for Dictionary {
    fn id(&self) -> &'static str {
        "dictionary"
    }

    fn summary(&self) -> &'static str {
        "subdivision invariance, collapse translation and K(X) = K(X^op)"
    }

    fn run(&self, dir: &Path, ctx: &Context, report: &mut RunReport) -> Result<(), Error> {
        let (p, mut checks) = match load_base(dir, report)? {
            Base::Poset(p) => (p, Vec::new()),
            Base::Complex(k) => {
                let sub = compare(&k, &barycentric_complex(&k));
                let face = compare(&k, &face_poset(&k));
                report.homology.push(sub.clone());
                report.line(format!("H(K) = {}", profile(&homology(&k, false))));
                (
                    face_poset(&k),
                    vec![
                        ("K and K' have the same homology", sub.equal),
                        ("K and X(K) have the same homology", face.equal),
                    ],
                )
            }
        };
        let sub = compare(&p, &barycentric_poset(&p));
        checks.push(("X and X' have the same homology", sub.equal));
        report.homology.push(sub);
        let op_same =
            order_complex(&p).canonical_form() == order_complex(&p.opposite()).canonical_form();
        checks.push(("K(X) equals K(X^op)", op_same));

        // the dismantling to the core, and a weak collapse to a point when one
        // exists, become simplicial collapses of the order complex
        let (core, dismantling) = core_of(&p, &p.full_set())?;
        let mut poset_certs = vec![("core", dismantling, core)];
        let acyclic = !p.is_empty() && homology(&p, true).is_acyclic();
        if acyclic {
            match collapse_search_within(&p, &p.full_set(), None, ctx.oracle.budget())? {
                CollapseOutcome::Found { certificate } => {
                    let end = certificate.replay(&p, &p.full_set())?;
                    poset_certs.push(("point", certificate, end));
                }
                CollapseOutcome::Exhausted { .. } => report.line("no weak collapse to a point"),
                CollapseOutcome::BudgetExhausted { .. } => {
                    report.line("weak collapse search ran out of budget")
                }
            }
        }
        let k = order_complex(&p);
        for (name, cert, end) in poset_certs {
            report.line(format!("poset collapse to {name}: {} steps", cert.len()));
            match translate_poset_certificate(&p, &p.full_set(), &cert, ctx.oracle.budget())? {
                Some(simplicial) => {
                    report.attach(
                        format!("order-complex-to-{name}"),
                        Attachment::Complex {
                            complex: k.clone(),
                            end: order_complex_of(&p, &end)?.canonical_form(),
                        },
                        simplicial,
                    );
                }
                None => {
                    report.line(format!(
                        "  translation of the {name} collapse ran out of budget"
                    ));
                    report.status = ReportStatus::Unknown;
                }
            }
            report.attach(
                format!("poset-to-{name}"),
                Attachment::Poset {
                    poset: p.clone(),
                    start: p.full_set(),
                    end,
                },
                cert,
            );
        }
        for (name, ok) in &checks {
            report.line(format!("{}: {name}", if *ok { "ok" } else { "FAILED" }));
        }
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::Inconsistent(format!(
                "dictionary check failed: {name}"
            )));
        }
        report.set_result(
            &checks
                .iter()
                .map(|(n, ok)| (n.to_string(), *ok))
                .collect::<std::collections::BTreeMap<_, _>>(),
        );
        Ok(())
    }
}
