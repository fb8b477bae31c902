//! JSON documents: the diagram file and the lens-bounds report.
//!
//! Integers outside the IEEE double safe range (`|x| > 2^53 - 1`) are written
//! as decimal strings; readers accept either form.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::construct::{
    build_diagram, classify, diagram_stats, kirby_link, validate_path, CutSystem, DualPath,
    PathMode, PieceGenera, ScaffoldCurve,
};
use crate::error::{Error, Result};
use crate::farey::{Slope, SlopePath};
use crate::forms::consistency_report;
use crate::lens::{BoundResult, LensSpace};

pub const DIAGRAM_VERSION: u32 = 1;

const SAFE_INTEGER: i128 = (1 << 53) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WireInt(pub i128);

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.abs() <= SAFE_INTEGER {
            s.serialize_i64(self.0 as i64)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = WireInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<WireInt, E> {
                Ok(WireInt(v as i128))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<WireInt, E> {
                Ok(WireInt(v as i128))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<WireInt, E> {
                v.trim().parse().map(WireInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireSlope {
    pub p: WireInt,
    pub q: WireInt,
}

impl From<Slope> for WireSlope {
    fn from(s: Slope) -> Self {
        WireSlope {
            p: WireInt(s.p() as i128),
            q: WireInt(s.q() as i128),
        }
    }
}

impl WireSlope {
    /// Slopes in a document must already be in canonical form.
    pub fn to_slope(self) -> Result<Slope> {
        let s = Slope::from_wide(self.p.0, self.q.0)?;
        if s.p() as i128 != self.p.0 || s.q() as i128 != self.q.0 {
            return Err(Error::Malformed(format!(
                "slope {}/{} is not reduced and sign-normalized",
                self.p.0, self.q.0
            )));
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirePath {
    pub mode: PathMode,
    pub systems: Vec<Vec<WireSlope>>,
}

impl WirePath {
    pub fn from_path(path: &DualPath) -> WirePath {
        WirePath {
            mode: path.mode,
            systems: path
                .systems
                .iter()
                .map(|d| d.0.iter().map(|&s| s.into()).collect())
                .collect(),
        }
    }

    pub fn to_path(&self) -> Result<DualPath> {
        let systems = self
            .systems
            .iter()
            .map(|d| d.iter().map(|s| s.to_slope()).collect::<Result<Vec<_>>>().map(CutSystem))
            .collect::<Result<Vec<_>>>()?;
        Ok(DualPath {
            systems,
            mode: self.mode,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireBlue {
    pub copy: usize,
    pub coordinate: usize,
    pub system: usize,
    pub slope: WireSlope,
    pub reflected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireKirbyCurve {
    pub depth: usize,
    pub system: usize,
    pub coordinate: usize,
    pub slope: WireSlope,
    pub framing: WireInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireKirby {
    pub curves: Vec<WireKirbyCurve>,
    pub linking_matrix: Vec<Vec<WireInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireClassification {
    pub raw_untwisted: usize,
    pub raw_twisted: usize,
    pub normal_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireStats {
    pub total_genus: usize,
    pub ball_count: Option<usize>,
    pub minimal: bool,
    pub summand_count: usize,
    pub euler_characteristic: i64,
    pub m_piece_genera: Option<PieceGenera>,
}

/// The diagram file written by `build` and read by `render` and `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub version: u32,
    pub genus_per_copy: usize,
    pub num_copies: usize,
    pub path: WirePath,
    pub blue: Vec<WireBlue>,
    pub red: Vec<ScaffoldCurve>,
    pub green: Vec<ScaffoldCurve>,
    pub kirby: WireKirby,
    pub classification: WireClassification,
    pub stats: WireStats,
}

impl DiagramDocument {
    pub fn build(path: &DualPath) -> Result<DiagramDocument> {
        let diagram = build_diagram(path)?;
        let link = kirby_link(path);
        let cs = classify(path);
        let stats = diagram_stats(&diagram, &cs)?;
        let n = link.curves.len();
        let linking_matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        i128::try_from(link.linking_matrix.get(i, j))
                            .map(WireInt)
                            .map_err(|_| Error::Overflow("linking number"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagramDocument {
            version: DIAGRAM_VERSION,
            genus_per_copy: diagram.genus_per_copy,
            num_copies: diagram.num_copies,
            path: WirePath::from_path(path),
            blue: diagram
                .blue
                .iter()
                .map(|b| WireBlue {
                    copy: b.copy,
                    coordinate: b.coordinate,
                    system: b.system,
                    slope: b.slope.into(),
                    reflected: b.reflected,
                })
                .collect(),
            red: diagram.red,
            green: diagram.green,
            kirby: WireKirby {
                curves: link
                    .curves
                    .iter()
                    .map(|c| WireKirbyCurve {
                        depth: c.depth,
                        system: c.system,
                        coordinate: c.coordinate,
                        slope: c.slope.into(),
                        framing: WireInt(c.framing),
                    })
                    .collect(),
                linking_matrix,
            },
            classification: WireClassification {
                raw_untwisted: cs.raw_untwisted,
                raw_twisted: cs.raw_twisted,
                normal_form: cs.normal_form(),
            },
            stats: WireStats {
                total_genus: stats.total_genus,
                ball_count: stats.ball_count,
                minimal: stats.minimal,
                summand_count: stats.summand_count,
                euler_characteristic: stats.euler_characteristic,
                m_piece_genera: diagram.metadata.m_piece_genera,
            },
        })
    }

    pub fn from_json(text: &str) -> Result<DiagramDocument> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Every way in which this document differs from what its own path
    /// produces. Empty means the document verifies.
    pub fn audit(&self) -> Vec<String> {
        let mut issues = Vec::new();
        if self.version != DIAGRAM_VERSION {
            issues.push(format!("unsupported version {}", self.version));
        }
        let path = match self.path.to_path() {
            Ok(p) => p,
            Err(e) => {
                issues.push(format!("path: {e}"));
                return issues;
            }
        };
        let violations = validate_path(&path);
        if !violations.is_empty() {
            issues.extend(violations.iter().map(|v| format!("path: {v}")));
            return issues;
        }
        let expected = match DiagramDocument::build(&path) {
            Ok(d) => d,
            Err(e) => {
                issues.push(format!("rebuild failed: {e}"));
                return issues;
            }
        };

        let total = expected.stats.total_genus;
        if self.genus_per_copy != expected.genus_per_copy {
            issues.push(format!(
                "genus_per_copy {} but path has genus {}",
                self.genus_per_copy, expected.genus_per_copy
            ));
        }
        if self.num_copies != expected.num_copies {
            issues.push(format!(
                "num_copies {} but path needs {}",
                self.num_copies, expected.num_copies
            ));
        }
        for (colour, n) in [
            ("blue", self.blue.len()),
            ("red", self.red.len()),
            ("green", self.green.len()),
        ] {
            if n != total {
                issues.push(format!("{n} {colour} curves, expected total genus {total}"));
            }
        }
        for (k, (got, want)) in self.blue.iter().zip(&expected.blue).enumerate() {
            if got != want {
                issues.push(format!(
                    "blue curve {k}: copy {} D_{} slope {}/{} reflected {}, expected copy {} D_{} slope {}/{} reflected {}",
                    got.copy, got.system, got.slope.p.0, got.slope.q.0, got.reflected,
                    want.copy, want.system, want.slope.p.0, want.slope.q.0, want.reflected
                ));
            }
        }
        if self.red != expected.red {
            issues.push("red scaffold differs from the construction".into());
        }
        if self.green != expected.green {
            issues.push("green scaffold differs from the construction".into());
        }

        if self.kirby.curves.len() != expected.kirby.curves.len() {
            issues.push(format!(
                "{} Kirby curves, expected {}",
                self.kirby.curves.len(),
                expected.kirby.curves.len()
            ));
        }
        for (k, (got, want)) in self.kirby.curves.iter().zip(&expected.kirby.curves).enumerate() {
            let recomputed = got.slope.p.0.checked_mul(got.slope.q.0);
            if recomputed != Some(got.framing.0) {
                issues.push(format!(
                    "Kirby curve {k} (D_{}, coordinate {}, slope {}/{}): framing {}, expected {}",
                    got.system,
                    got.coordinate,
                    got.slope.p.0,
                    got.slope.q.0,
                    got.framing.0,
                    recomputed.map_or("overflow".to_string(), |x| x.to_string())
                ));
            }
            if (got.depth, got.system, got.coordinate, got.slope)
                != (want.depth, want.system, want.coordinate, want.slope)
            {
                issues.push(format!(
                    "Kirby curve {k}: layer D_{} slope {}/{} does not match path layer D_{} slope {}/{}",
                    got.system, got.slope.p.0, got.slope.q.0, want.system, want.slope.p.0, want.slope.q.0
                ));
            }
        }
        if self.kirby.linking_matrix != expected.kirby.linking_matrix {
            issues.push("linking matrix differs from the nesting rule".into());
        }
        if self.classification != expected.classification {
            issues.push(format!(
                "classification {} recorded, path gives {}",
                self.classification.normal_form, expected.classification.normal_form
            ));
        }
        if self.stats != expected.stats {
            issues.push("stats differ from the construction".into());
        }
        match consistency_report(&path) {
            Ok(r) => issues.extend(r.mismatches.into_iter().map(|m| format!("forms: {m}"))),
            Err(e) => issues.push(format!("forms: {e}")),
        }
        issues
    }
}

fn slope_strings(path: &SlopePath) -> Vec<String> {
    path.vertices.iter().map(ToString::to_string).collect()
}

fn bound_json(b: &BoundResult) -> Value {
    json!({
        "n": b.n,
        "path": slope_strings(&b.path),
        "representative": { "p": b.representative.p(), "q": b.representative.q() },
        "exactness": b.exactness.to_string(),
    })
}

/// `{p, q, reps, twisted: {n, path, ..}, untwisted: {n, path, exactness, ..}}`.
pub fn lens_bounds_json(lens: LensSpace, twisted: &BoundResult, untwisted: &BoundResult) -> Value {
    let reps: Vec<Value> = lens
        .equivalent_reps()
        .iter()
        .map(|l| json!({ "p": l.p(), "q": l.q() }))
        .collect();
    json!({
        "p": lens.p(),
        "q": lens.q(),
        "reps": reps,
        "twisted": bound_json(twisted),
        "untwisted": bound_json(untwisted),
    })
}
