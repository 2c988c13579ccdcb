//! The shipped fixture set. Each fixture is a directory holding input files
//! and a `fixture.json` manifest naming the theorem to verify and the
//! expected status.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use posetop::io;
use posetop::mapper::PointCloud;
use posetop::Error;

pub const MANIFEST: &str = "fixture.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub theorem: String,
    pub expect: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default)]
    pub description: String,
}

pub struct Fixture {
    pub name: &'static str,
    /// Absent for inputs that are not tied to a theorem.
    pub manifest: Option<Manifest>,
    pub description: &'static str,
    pub files: Vec<(&'static str, String)>,
}

fn manifest(theorem: &str, expect: &str, description: &str) -> Option<Manifest> {
    Some(Manifest {
        theorem: theorem.into(),
        expect: expect.into(),
        degree: None,
        description: description.into(),
    })
}

fn lines(items: &[&str]) -> String {
    items.iter().map(|l| format!("{l}\n")).collect()
}

pub const RP2_FACETS: [[&str; 3]; 10] = [
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
];

/// Seven vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus_facets() -> Vec<[String; 3]> {
    let mut out = Vec::new();
    for i in 0..7 {
        out.push([i, (i + 1) % 7, (i + 3) % 7].map(|v| v.to_string()));
        out.push([i, (i + 2) % 7, (i + 3) % 7].map(|v| v.to_string()));
    }
    out
}

/// A poset that collapses to a point by weak point deletions but has no
/// beat points.
pub const COLLAPSIBLE_NOT_CONTRACTIBLE: &str = include_str!("collapsible.txt");

/// Seed of the shipped circle sample.
pub const CIRCLE_SEED: u64 = 2;

pub fn shipped() -> Vec<Fixture> {
    let triangle_boundary = lines(&["u v", "v w", "u w"]);
    let hexagon = lines(&["a b", "b c", "c d", "d e", "e f", "a f"]);
    let mut fixtures = vec![
        Fixture {
            name: "example-3-12",
            description: "",
            manifest: manifest(
                "cor-completion",
                "certified",
                "boundary of a triangle covered by L = {uw, vw} and T = {uv}; the completion has two 0-cells and two 1-cells",
            ),
            files: vec![
                ("complex.txt", triangle_boundary.clone()),
                ("cover.txt", lines(&["part L", "u w", "v w", "part T", "u v"])),
            ],
        },
        Fixture {
            name: "refutation",
            description: "",
            manifest: manifest("thm-a", "refuted", "a point fully related to a two point antichain"),
            files: vec![
                ("source.txt", lines(&["p"])),
                ("target.txt", lines(&["a", "b"])),
                ("relation.txt", lines(&["p ~ a", "p ~ b"])),
            ],
        },
        Fixture {
            name: "point",
            description: "",
            manifest: manifest("dictionary", "certified", "the one point poset"),
            files: vec![("poset.txt", lines(&["p"]))],
        },
        Fixture {
            name: "hexagon",
            description: "",
            manifest: manifest("dictionary", "certified", "six-cycle, H = (Z, Z)"),
            files: vec![("complex.txt", hexagon.clone())],
        },
        Fixture {
            name: "tetrahedron-boundary",
            description: "",
            manifest: manifest("dictionary", "certified", "boundary of the 3-simplex, H = (Z, 0, Z)"),
            files: vec![(
                "complex.txt",
                lines(&["a b c", "a b d", "a c d", "b c d"]),
            )],
        },
        Fixture {
            name: "rp2",
            description: "",
            manifest: manifest("dictionary", "certified", "six vertex projective plane, H_1 = Z/2"),
            files: vec![(
                "complex.txt",
                RP2_FACETS.iter().map(|f| f.join(" ") + "\n").collect(),
            )],
        },
        Fixture {
            name: "torus",
            description: "",
            manifest: manifest("dictionary", "certified", "seven vertex torus, H_1 = Z^2"),
            files: vec![(
                "complex.txt",
                torus_facets().iter().map(|f| f.join(" ") + "\n").collect(),
            )],
        },
        Fixture {
            name: "collapsible-not-contractible",
            description: "",
            manifest: manifest(
                "dictionary",
                "certified",
                "collapses to a point by weak point deletions but is its own core",
            ),
            files: vec![("poset.txt", COLLAPSIBLE_NOT_CONTRACTIBLE.to_owned())],
        },
        Fixture {
            name: "quillen-map",
            description: "",
            manifest: manifest(
                "thm-a",
                "certified",
                "face poset of a filled triangle mapped to a point",
            ),
            files: vec![
                (
                    "source.txt",
                    lines(&["a < ab < abc", "b < ab", "b < bc < abc", "c < bc", "c < ac < abc", "a < ac"]),
                ),
                ("target.txt", lines(&["m"])),
                (
                    "map.txt",
                    lines(&["a -> m", "b -> m", "c -> m", "ab -> m", "bc -> m", "ac -> m", "abc -> m"]),
                ),
            ],
        },
        Fixture {
            name: "collapse-to-source",
            description: "",
            manifest: manifest(
                "prop-2.4",
                "certified",
                "order relation of a three element chain onto a point; only the preimage hulls need be trivial",
            ),
            files: vec![
                ("source.txt", lines(&["a < b < c"])),
                ("target.txt", lines(&["m"])),
                ("relation.txt", lines(&["c ~ m"])),
            ],
        },
        Fixture {
            name: "collapse-to-target",
            description: "",
            manifest: manifest(
                "prop-2.5",
                "certified",
                "a chain related to a vee through its top element",
            ),
            files: vec![
                ("source.txt", lines(&["a < b"])),
                ("target.txt", lines(&["l < t", "r < t"])),
                ("relation.txt", lines(&["a ~ t", "b ~ t"])),
            ],
        },
        Fixture {
            name: "hexagon-homology",
            description: "",
            manifest: manifest(
                "prop-homology",
                "certified",
                "hexagon face poset fully related to a point; preimage hulls are connected but not acyclic",
            )
            .map(|m| Manifest {
                degree: Some(0),
                ..m
            }),
            files: vec![
                ("source.txt", hexagon_face_poset()),
                ("target.txt", lines(&["m"])),
                ("relation.txt", hexagon_face_poset_related_to("m")),
            ],
        },
        Fixture {
            name: "good-cover",
            description: "",
            manifest: manifest(
                "nerve-good",
                "certified",
                "two triangles sharing an edge, covered by their facets",
            ),
            files: vec![
                ("complex.txt", lines(&["a b c", "b c d"])),
                ("cover.txt", lines(&["part L", "a b c", "part T", "b c d"])),
            ],
        },
        Fixture {
            name: "x-zero-cover",
            description: "",
            manifest: manifest(
                "nerve-x0",
                "certified",
                "hexagon covered by three overlapping arcs; the triple intersection is empty",
            ),
            files: vec![
                ("complex.txt", hexagon.clone()),
                (
                    "cover.txt",
                    lines(&["part A", "a b", "b c", "part B", "c d", "d e", "part C", "e f", "a f"]),
                ),
            ],
        },
        Fixture {
            name: "quasi-good-circle",
            description: "",
            manifest: manifest(
                "nerve-quasigood",
                "certified",
                "hexagon covered by two arcs meeting in two components",
            ),
            files: vec![
                ("complex.txt", hexagon.clone()),
                (
                    "cover.txt",
                    lines(&["part P", "a b", "b c", "c d", "part Q", "d e", "e f", "a f"]),
                ),
            ],
        },
        Fixture {
            name: "not-good-circle",
            description: "",
            manifest: manifest(
                "nerve-good",
                "refuted",
                "the two arc hexagon cover is not good: its intersection is disconnected",
            ),
            files: vec![
                ("complex.txt", hexagon),
                (
                    "cover.txt",
                    lines(&["part P", "a b", "b c", "c d", "part Q", "d e", "e f", "a f"]),
                ),
            ],
        },
    ];
    fixtures.push(Fixture {
        name: "circle-sample",
        manifest: None,
        description: "60 points near the unit circle; input for the mapper subcommand",
        files: vec![(
            "points.csv",
            io::points_to_csv(&PointCloud::noisy_circle(60, CIRCLE_SEED)),
        )],
    });
    fixtures
}

fn hexagon_labels() -> Vec<String> {
    let v = ["a", "b", "c", "d", "e", "f"];
    let mut out: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    for i in 0..6 {
        let (x, y) = (v[i], v[(i + 1) % 6]);
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        out.push(format!("{x}{y}"));
    }
    out
}

fn hexagon_face_poset() -> String {
    let v = ["a", "b", "c", "d", "e", "f"];
    let mut out = String::new();
    for i in 0..6 {
        let (x, y) = (v[i], v[(i + 1) % 6]);
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        out.push_str(&format!("{x} < {lo}{hi}\n{y} < {lo}{hi}\n"));
    }
    out
}

fn hexagon_face_poset_related_to(m: &str) -> String {
    hexagon_labels()
        .into_iter()
        .map(|x| format!("{x} ~ {m}\n"))
        .collect()
}

/// Writes every shipped fixture under `dir`.
pub fn write_all(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let mut written = Vec::new();
    for f in shipped() {
        let root = dir.join(f.name);
        std::fs::create_dir_all(&root)?;
        if let Some(m) = &f.manifest {
            std::fs::write(root.join(MANIFEST), serde_json::to_string_pretty(m)? + "\n")?;
        }
        for (name, content) in &f.files {
            std::fs::write(root.join(name), content)?;
        }
        written.push(root);
    }
    Ok(written)
}

/// Names of shipped fixtures whose files under `dir` are missing or differ.
pub fn check_all(dir: &Path) -> Vec<String> {
    let mut stale = Vec::new();
    for f in shipped() {
        let root = dir.join(f.name);
        let manifest = f
            .manifest
            .as_ref()
            .map(|m| serde_json::to_string_pretty(m).expect("serializes") + "\n");
        let same = |name: &str, content: &str| {
            std::fs::read_to_string(root.join(name)).is_ok_and(|c| c == content)
        };
        if !manifest.as_ref().is_none_or(|m| same(MANIFEST, m))
            || !f.files.iter().all(|(n, c)| same(n, c))
        {
            stale.push(f.name.to_owned());
        }
    }
    stale
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, Error> {
    let text = std::fs::read_to_string(dir.join(MANIFEST)).map_err(|e| {
        Error::Invalid(format!("cannot read {}: {e}", dir.join(MANIFEST).display()))
    })?;
    Ok(serde_json::from_str(&text)?)
}
