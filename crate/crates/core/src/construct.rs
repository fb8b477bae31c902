//! Trisection diagrams and Kirby diagrams built from paths of cut systems.
//!
//! Only cut systems that are coordinatewise products of torus slopes are
//! modelled: a genus-`g` cut system is a vector of `g` slopes, and two
//! systems are dual (parallel) in a coordinate when the slopes there are
//! dual (equal).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{common_neighbors, farey_det, is_dual, is_even_vertex, Slope, SlopePath};
use crate::forms::SymIntMatrix;
use crate::lens::{twisted_bound, untwisted_bound, LensSpace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutSystem(pub Vec<Slope>);

impl CutSystem {
    pub fn uniform(slope: Slope, genus: usize) -> CutSystem {
        CutSystem(vec![slope; genus])
    }

    pub fn genus(&self) -> usize {
        self.0.len()
    }
}

/// `A`: every coordinate of every step is dual.
/// `B`: each coordinate is dual or parallel, and no step is parallel everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathMode {
    A,
    B,
}

impl fmt::Display for PathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathMode::A => "A",
            PathMode::B => "B",
        })
    }
}

/// Which graph a lens-space path is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Whole Farey graph.
    Any,
    /// Even Farey graph only.
    Even,
}

/// Cut systems `D_0, ..., D_m` with `D_0` meridians and `D_1` longitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPath {
    pub systems: Vec<CutSystem>,
    pub mode: PathMode,
}

impl DualPath {
    pub fn genus(&self) -> usize {
        self.systems.first().map_or(0, CutSystem::genus)
    }

    /// Index of the last system.
    pub fn m(&self) -> usize {
        self.systems.len().saturating_sub(1)
    }

    pub fn slope(&self, system: usize, coordinate: usize) -> Slope {
        self.systems[system].0[coordinate]
    }

    pub fn from_slope_path(path: &SlopePath, mode: PathMode) -> DualPath {
        DualPath {
            systems: path
                .vertices
                .iter()
                .map(|s| CutSystem(vec![*s]))
                .collect(),
            mode,
        }
    }

    /// The slope sequence of one coordinate.
    pub fn coordinate(&self, j: usize) -> Vec<Slope> {
        self.systems.iter().map(|d| d.0[j]).collect()
    }

    fn from_coordinates(coords: &[Vec<Slope>], mode: PathMode) -> DualPath {
        let len = coords[0].len();
        DualPath {
            systems: (0..len)
                .map(|i| CutSystem(coords.iter().map(|c| c[i]).collect()))
                .collect(),
            mode,
        }
    }

    /// Number of (step, coordinate) pairs with a dual step among steps `2..=m`.
    pub fn dual_step_count(&self) -> usize {
        (2..self.systems.len())
            .map(|i| {
                (0..self.genus())
                    .filter(|&j| self.slope(i, j) != self.slope(i - 1, j))
                    .count()
            })
            .sum()
    }

    pub fn has_parallel_steps(&self) -> bool {
        self.dual_step_count() < self.genus() * self.m().saturating_sub(1)
    }
}

/// One failed path invariant. `step` is `i` for the pair `D_{i-1} -> D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub step: Option<usize>,
    pub coordinate: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.step, self.coordinate) {
            (Some(i), Some(j)) => write!(f, "step {i}, coordinate {j}: {}", self.message),
            (Some(i), None) => write!(f, "step {i}: {}", self.message),
            (None, Some(j)) => write!(f, "coordinate {j}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

pub fn validate_path(path: &DualPath) -> Vec<Violation> {
    let mut out = Vec::new();
    let v = |step, coordinate, message: String| Violation {
        step,
        coordinate,
        message,
    };
    let g = path.genus();
    if g == 0 {
        out.push(v(None, None, "genus must be at least 1".into()));
        return out;
    }
    if path.m() < 2 {
        out.push(v(
            None,
            None,
            format!("need at least D_0, D_1, D_2; got {} systems", path.systems.len()),
        ));
    }
    for (i, d) in path.systems.iter().enumerate() {
        if d.genus() != g {
            out.push(v(
                Some(i),
                None,
                format!("D_{i} has {} curves, expected {g}", d.genus()),
            ));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for j in 0..g {
        if path.slope(0, j) != Slope::ZERO {
            out.push(v(Some(0), Some(j), format!("D_0 must be 0/1, got {}", path.slope(0, j))));
        }
        if path.slope(1, j) != Slope::INFINITY {
            out.push(v(Some(1), Some(j), format!("D_1 must be 1/0, got {}", path.slope(1, j))));
        }
    }
    for i in 1..path.systems.len() {
        let mut all_equal = true;
        for j in 0..g {
            let (a, b) = (path.slope(i - 1, j), path.slope(i, j));
            if a == b {
                if path.mode == PathMode::A {
                    out.push(v(Some(i), Some(j), format!("{a} repeated; mode A needs dual steps")));
                }
            } else {
                all_equal = false;
                if !is_dual(a, b) {
                    out.push(v(
                        Some(i),
                        Some(j),
                        format!("{a} -> {b} is not dual (det {})", farey_det(a, b)),
                    ));
                }
            }
        }
        if all_equal && path.mode == PathMode::B {
            out.push(v(Some(i), None, "step is parallel in every coordinate".into()));
        }
    }
    out
}

fn require_valid(path: &DualPath) -> Result<()> {
    let violations = validate_path(path);
    if violations.is_empty() {
        Ok(())
    } else {
        let joined: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(Error::InvalidPath(joined.join("; ")))
    }
}

/// Genus-1 path for a lens space, anchored `0/1, 1/0, ...`.
pub fn path_from_lens(lens: LensSpace, route: Route, cap: u64) -> Result<DualPath> {
    let bound = match route {
        Route::Any => twisted_bound(lens, cap)?,
        Route::Even => untwisted_bound(lens, cap)?,
    };
    Ok(DualPath::from_slope_path(&bound.path, PathMode::A))
}

/// Insert one vertex between `D_1 = 1/0` and `D_2`, preferring an even
/// framing and `2/1` in particular.
fn shim(next: Slope) -> Result<Slope> {
    let mut cands = common_neighbors(Slope::INFINITY, next)?;
    cands.sort_by_key(|s| (!is_even_vertex(*s), *s != Slope::new(2, 1).unwrap(), s.fan_key()));
    Ok(cands[0])
}

/// Coordinatewise product of genus-1 paths, padded to a common length.
///
/// Mode B repeats the final slope of short coordinates. Mode A inserts
/// `0/1, 1/0` pairs after `D_1`, plus a single shim vertex when the length
/// difference is odd.
pub fn path_product(parts: &[DualPath], mode: PathMode) -> Result<DualPath> {
    if parts.is_empty() {
        return Err(Error::Degenerate("path_product of no parts".into()));
    }
    for part in parts {
        if part.genus() != 1 {
            return Err(Error::InvalidPath(format!(
                "product parts must have genus 1, got {}",
                part.genus()
            )));
        }
        require_valid(part)?;
    }
    let m = parts.iter().map(DualPath::m).max().expect("nonempty");
    let mut coords = Vec::with_capacity(parts.len());
    for part in parts {
        let mut c = part.coordinate(0);
        let deficit = m - part.m();
        match mode {
            PathMode::B => {
                let last = *c.last().expect("nonempty");
                c.extend(std::iter::repeat_n(last, deficit));
            }
            PathMode::A => {
                let mut middle = Vec::with_capacity(deficit);
                for _ in 0..deficit / 2 {
                    middle.push(Slope::ZERO);
                    middle.push(Slope::INFINITY);
                }
                if deficit % 2 == 1 {
                    middle.push(shim(c[2])?);
                }
                c.splice(2..2, middle);
            }
        }
        coords.push(c);
    }
    let path = DualPath::from_coordinates(&coords, mode);
    require_valid(&path)?;
    Ok(path)
}

/// Connect sum of `a` copies of `S2xS2` and `b` copies of `S2x~S2`, before
/// merging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConnectSum {
    pub raw_untwisted: usize,
    pub raw_twisted: usize,
}

impl ConnectSum {
    pub fn summand_count(self) -> usize {
        self.raw_untwisted + self.raw_twisted
    }

    /// `S2xS2 # S2x~S2 = #2 S2x~S2`, so any twisted summand makes every
    /// summand twisted.
    pub fn normal_form(self) -> String {
        if self.raw_twisted == 0 {
            format!("#{} S2xS2", self.raw_untwisted)
        } else {
            format!("#{} S2x~S2", self.summand_count())
        }
    }
}

impl fmt::Display for ConnectSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.normal_form())
    }
}

/// Split off one Hopf link per dual coordinate-step `D_{i-1} -> D_i`,
/// `i >= 2`: untwisted when the framing of `D_i` is even. Parallel steps
/// split off unlinked 0-framed unknots and contribute nothing.
pub fn classify(path: &DualPath) -> ConnectSum {
    let mut cs = ConnectSum {
        raw_untwisted: 0,
        raw_twisted: 0,
    };
    for i in 2..path.systems.len() {
        for j in 0..path.genus() {
            let (prev, cur) = (path.slope(i - 1, j), path.slope(i, j));
            if prev == cur {
                continue;
            }
            if is_even_vertex(cur) {
                cs.raw_untwisted += 1;
            } else {
                cs.raw_twisted += 1;
            }
        }
    }
    cs
}

/// System indices of the nested tori, innermost first: `1..=m, m-1..=2`.
fn layer_systems(m: usize) -> Vec<usize> {
    (1..=m).chain((2..m).rev()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCurve {
    /// 0 is the innermost torus.
    pub depth: usize,
    /// `i` of `D_i`.
    pub system: usize,
    pub coordinate: usize,
    pub slope: Slope,
    pub framing: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    pub curves: Vec<LinkCurve>,
    pub linking_matrix: SymIntMatrix,
}

/// Linking number of curves `a` (inner) and `b` (outer) on nested tori in
/// the same coordinate; curves in different coordinates are unlinked.
pub fn nested_linking(inner: Slope, outer: Slope) -> i128 {
    inner.p() as i128 * outer.q() as i128
}

/// Kirby diagram read off the folded surface. Reflections are undone by the
/// folding, so slopes appear unreflected.
pub fn kirby_link(path: &DualPath) -> FramedLink {
    let g = path.genus();
    let mut curves = Vec::new();
    for (depth, system) in layer_systems(path.m()).into_iter().enumerate() {
        for coordinate in 0..g {
            let slope = path.slope(system, coordinate);
            curves.push(LinkCurve {
                depth,
                system,
                coordinate,
                slope,
                framing: slope.framing(),
            });
        }
    }
    let n = curves.len();
    let mut entries = vec![0i128; n * n];
    for a in 0..n {
        for b in a..n {
            if curves[a].coordinate != curves[b].coordinate {
                continue;
            }
            let v = nested_linking(curves[a].slope, curves[b].slope);
            entries[a * n + b] = v;
            entries[b * n + a] = v;
        }
    }
    FramedLink {
        curves,
        linking_matrix: SymIntMatrix::from_i128(n, &entries).expect("built symmetric"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlueCurve {
    /// 1-based, left to right.
    pub copy: usize,
    pub coordinate: usize,
    pub system: usize,
    pub slope: Slope,
    pub reflected: bool,
}

impl BlueCurve {
    /// Slope as drawn: reflection negates `p`.
    pub fn drawn_slope(&self) -> Slope {
        if self.reflected {
            self.slope.reflect()
        } else {
            self.slope
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Longitude,
    Meridian,
    Bridge,
}

/// A copy of the surface, or the tube between copies `k` and `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Copy(usize),
    Gap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldCurve {
    pub kind: CurveKind,
    pub location: Location,
    pub coordinate: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceGenera {
    pub red: usize,
    pub green: usize,
    pub blue: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramMetadata {
    pub total_genus: usize,
    pub ball_count: Option<usize>,
    pub m_piece_genera: Option<PieceGenera>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrisectionDiagram {
    pub genus_per_copy: usize,
    pub num_copies: usize,
    pub path: DualPath,
    pub blue: Vec<BlueCurve>,
    pub red: Vec<ScaffoldCurve>,
    pub green: Vec<ScaffoldCurve>,
    pub metadata: DiagramMetadata,
}

/// Blue system index for each copy, left to right: `2..=m, m-1..=1`.
pub fn copy_systems(m: usize) -> Vec<usize> {
    (2..=m).chain((1..m).rev()).collect()
}

/// Lay `2(m-1)` copies of the Heegaard surface side by side: red longitudes
/// on the leftmost copy, green meridians on the rightmost, one red and one
/// green bridge per coordinate in each tube, and the blue systems
/// `D_2 .. D_m .. D_1`, reflected on even indices.
pub fn build_diagram(path: &DualPath) -> Result<TrisectionDiagram> {
    require_valid(path)?;
    let g = path.genus();
    let m = path.m();
    let systems = copy_systems(m);
    let num_copies = systems.len();

    let mut blue = Vec::with_capacity(num_copies * g);
    for (k, &system) in systems.iter().enumerate() {
        for coordinate in 0..g {
            blue.push(BlueCurve {
                copy: k + 1,
                coordinate,
                system,
                slope: path.slope(system, coordinate),
                reflected: system % 2 == 0,
            });
        }
    }

    let scaffold = |end_kind: CurveKind, end_copy: usize| {
        let mut out = Vec::with_capacity(num_copies * g);
        for coordinate in 0..g {
            out.push(ScaffoldCurve {
                kind: end_kind,
                location: Location::Copy(end_copy),
                coordinate,
            });
        }
        for gap in 1..num_copies {
            for coordinate in 0..g {
                out.push(ScaffoldCurve {
                    kind: CurveKind::Bridge,
                    location: Location::Gap(gap),
                    coordinate,
                });
            }
        }
        out
    };
    let red = scaffold(CurveKind::Longitude, 1);
    let green = scaffold(CurveKind::Meridian, num_copies);

    let m_piece_genera = match (g, m) {
        (1, 2) => Some(PieceGenera {
            red: 2,
            green: 1,
            blue: 1,
        }),
        (1, 3) => Some(PieceGenera {
            red: 2,
            green: 3,
            blue: 1,
        }),
        _ => None,
    };
    Ok(TrisectionDiagram {
        genus_per_copy: g,
        num_copies,
        path: path.clone(),
        blue,
        red,
        green,
        metadata: DiagramMetadata {
            total_genus: g * num_copies,
            ball_count: (g == 1).then_some(m - 1),
            m_piece_genera,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramStats {
    pub total_genus: usize,
    pub summand_count: usize,
    /// No parallel steps, so the trisection has genus exactly `2n`.
    pub minimal: bool,
    pub ball_count: Option<usize>,
    /// `(genus; 0, 0, 0)` for minimal diagrams.
    pub parameters: Option<(usize, [usize; 3])>,
    pub euler_characteristic: i64,
}

pub fn diagram_stats(d: &TrisectionDiagram, c: &ConnectSum) -> Result<DiagramStats> {
    let recomputed = classify(&d.path);
    if recomputed != *c {
        return Err(Error::Mismatch(format!(
            "classification {c} does not come from this diagram's path ({recomputed})"
        )));
    }
    let n = c.summand_count();
    let total_genus = d.metadata.total_genus;
    let minimal = !d.path.has_parallel_steps();
    let chi = 2 + 2 * n as i64;
    if minimal && 2 + total_genus as i64 != chi {
        return Err(Error::Mismatch(format!(
            "genus {total_genus} trisection with no parallel steps but {n} summands"
        )));
    }
    Ok(DiagramStats {
        total_genus,
        summand_count: n,
        minimal,
        ball_count: d.metadata.ball_count,
        parameters: minimal.then_some((total_genus, [0, 0, 0])),
        euler_characteristic: chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::normalize;
    use num_bigint::BigInt;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn genus_one(slopes: &[(i64, i64)]) -> DualPath {
        DualPath {
            systems: slopes.iter().map(|&(p, q)| CutSystem(vec![s(p, q)])).collect(),
            mode: PathMode::A,
        }
    }

    fn seven_two_path() -> DualPath {
        genus_one(&[(0, 1), (1, 0), (3, 1), (7, 2)])
    }

    fn l(p: i64, q: i64) -> LensSpace {
        normalize(p, q).unwrap()
    }

    #[test]
    fn lens_paths() {
        let p = path_from_lens(l(7, 2), Route::Any, 56).unwrap();
        assert_eq!(p, seven_two_path());
        let p = path_from_lens(l(7, 2), Route::Even, 56).unwrap();
        assert_eq!(p, genus_one(&[(0, 1), (1, 0), (4, 1), (7, 2)]));
        for n in 2..10 {
            let p = path_from_lens(l(n, 1), Route::Any, l(n, 1).default_cap()).unwrap();
            assert_eq!(p, genus_one(&[(0, 1), (1, 0), (n, 1)]));
        }
    }

    #[test]
    fn product_mode_b() {
        let a = path_from_lens(l(2, 1), Route::Any, 32).unwrap();
        let b = path_from_lens(l(3, 2), Route::Even, 32).unwrap();
        let prod = path_product(&[a, b], PathMode::B).unwrap();
        assert_eq!(prod.genus(), 2);
        assert_eq!(prod.m(), 3);
        assert_eq!(prod.coordinate(0), vec![s(0, 1), s(1, 0), s(2, 1), s(2, 1)]);
        assert_eq!(prod.coordinate(1), vec![s(0, 1), s(1, 0), s(2, 1), s(3, 2)]);
        assert_eq!(
            classify(&prod),
            ConnectSum {
                raw_untwisted: 3,
                raw_twisted: 0
            }
        );
        let d = build_diagram(&prod).unwrap();
        assert_eq!(d.num_copies, 4);
        assert_eq!(d.metadata.total_genus, 8);
        assert_eq!((d.red.len(), d.green.len(), d.blue.len()), (8, 8, 8));
        let st = diagram_stats(&d, &classify(&prod)).unwrap();
        assert_eq!((st.total_genus, st.summand_count, st.minimal), (8, 3, false));
        assert_eq!(st.parameters, None);
    }

    #[test]
    fn product_identical_parts() {
        let a = seven_two_path();
        let prod = path_product(&[a.clone(), a.clone()], PathMode::A).unwrap();
        assert_eq!(prod.coordinate(0), a.coordinate(0));
        assert_eq!(prod.coordinate(1), a.coordinate(0));
    }

    #[test]
    fn product_mode_a_pads_with_duals() {
        let a = path_from_lens(l(2, 1), Route::Any, 32).unwrap();
        let b = path_from_lens(l(7, 2), Route::Even, 56).unwrap();
        let prod = path_product(&[a, b], PathMode::A).unwrap();
        assert!(validate_path(&prod).is_empty());
        assert_eq!(prod.m(), 3);
        let c0 = prod.coordinate(0);
        assert_eq!(c0[..2], [Slope::ZERO, Slope::INFINITY]);
        assert_eq!(c0[3], s(2, 1));

        // even deficit keeps every framing even
        let c = path_from_lens(l(5, 4), Route::Even, 40).unwrap();
        let d = path_from_lens(l(7, 2), Route::Even, 56).unwrap();
        assert_eq!(c.m() - d.m(), 2);
        let prod = path_product(&[c, d], PathMode::A).unwrap();
        assert_eq!(
            prod.coordinate(1),
            vec![s(0, 1), s(1, 0), s(0, 1), s(1, 0), s(4, 1), s(7, 2)]
        );
        assert_eq!(classify(&prod).raw_twisted, 0);
    }

    #[test]
    fn shim_prefers_two_over_one() {
        assert_eq!(shim(s(1, 1)).unwrap(), s(2, 1));
        assert_eq!(shim(s(3, 1)).unwrap(), s(2, 1));
        assert_eq!(shim(s(5, 1)).unwrap(), s(4, 1));
        assert_eq!(shim(s(2, 1)).unwrap(), s(1, 1));
    }

    #[test]
    fn product_errors() {
        assert!(path_product(&[], PathMode::B).is_err());
        let two = path_product(&[seven_two_path(), seven_two_path()], PathMode::B).unwrap();
        assert!(path_product(&[two], PathMode::B).is_err());
    }

    #[test]
    fn diagram_lens_n_1() {
        for n in 2..10 {
            let d = build_diagram(&genus_one(&[(0, 1), (1, 0), (n, 1)])).unwrap();
            assert_eq!(d.num_copies, 2);
            assert_eq!(d.metadata.total_genus, 2);
            assert_eq!(d.blue.len(), 2);
            assert_eq!((d.blue[0].copy, d.blue[0].slope, d.blue[0].reflected), (1, s(n, 1), true));
            assert_eq!((d.blue[1].copy, d.blue[1].slope, d.blue[1].reflected), (2, s(1, 0), false));
            assert_eq!(d.red.len(), 2);
            assert_eq!(d.green.len(), 2);
            assert_eq!(d.red[0].kind, CurveKind::Longitude);
            assert_eq!(d.red[0].location, Location::Copy(1));
            assert_eq!(d.green[0].kind, CurveKind::Meridian);
            assert_eq!(d.green[0].location, Location::Copy(2));
            assert_eq!(d.metadata.ball_count, Some(1));
        }
    }

    #[test]
    fn diagram_l72() {
        let d = build_diagram(&seven_two_path()).unwrap();
        assert_eq!(d.num_copies, 4);
        assert_eq!(d.metadata.total_genus, 4);
        let blue: Vec<_> = d.blue.iter().map(|b| (b.slope, b.reflected)).collect();
        assert_eq!(
            blue,
            vec![(s(3, 1), true), (s(7, 2), false), (s(3, 1), true), (s(1, 0), false)]
        );
        assert_eq!(d.blue[0].drawn_slope(), s(-3, 1));
        assert_eq!(d.metadata.ball_count, Some(2));
        assert_eq!(
            d.metadata.m_piece_genera,
            Some(PieceGenera {
                red: 2,
                green: 3,
                blue: 1
            })
        );
        let c = classify(&seven_two_path());
        let st = diagram_stats(&d, &c).unwrap();
        assert_eq!((st.total_genus, st.summand_count, st.ball_count), (4, 2, Some(2)));
        assert!(st.minimal);
        assert_eq!(st.parameters, Some((4, [0, 0, 0])));
        assert_eq!(st.euler_characteristic, 6);
    }

    #[test]
    fn stats_reject_foreign_classification() {
        let d = build_diagram(&seven_two_path()).unwrap();
        let wrong = ConnectSum {
            raw_untwisted: 2,
            raw_twisted: 0,
        };
        assert!(matches!(diagram_stats(&d, &wrong), Err(Error::Mismatch(_))));
    }

    #[test]
    fn kirby_examples() {
        let k = kirby_link(&seven_two_path());
        let framings: Vec<i128> = k.curves.iter().map(|c| c.framing).collect();
        assert_eq!(framings, vec![0, 3, 14, 3]);
        let expect: Vec<i64> = vec![0, 1, 2, 1, 1, 3, 6, 3, 2, 6, 14, 7, 1, 3, 7, 3];
        let got: Vec<BigInt> = k.linking_matrix.entries().to_vec();
        assert_eq!(got, expect.into_iter().map(BigInt::from).collect::<Vec<_>>());

        for n in 2..10 {
            let k = kirby_link(&genus_one(&[(0, 1), (1, 0), (n, 1)]));
            let e: Vec<BigInt> = k.linking_matrix.entries().to_vec();
            assert_eq!(e, [0, 1, 1, n].map(BigInt::from).to_vec());
        }
    }

    #[test]
    fn kirby_genus_two_blocks_do_not_link() {
        let prod = path_product(&[seven_two_path(), seven_two_path()], PathMode::A).unwrap();
        let k = kirby_link(&prod);
        let n = k.curves.len();
        assert_eq!(n, 8);
        for a in 0..n {
            for b in 0..n {
                if k.curves[a].coordinate != k.curves[b].coordinate {
                    assert_eq!(k.linking_matrix.get(a, b), &BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&seven_two_path());
        assert_eq!((c.raw_untwisted, c.raw_twisted), (1, 1));
        assert_eq!(c.normal_form(), "#2 S2x~S2");
        let c = classify(&genus_one(&[(0, 1), (1, 0), (4, 1), (7, 2)]));
        assert_eq!((c.raw_untwisted, c.raw_twisted), (2, 0));
        assert_eq!(c.normal_form(), "#2 S2xS2");
    }

    #[test]
    fn validator() {
        assert!(validate_path(&seven_two_path()).is_empty());
        assert!(validate_path(&genus_one(&[(0, 1), (1, 0), (3, 1), (5, 2)])).is_empty());

        let v = validate_path(&genus_one(&[(0, 1), (1, 0), (3, 1), (3, 1)]));
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].step, v[0].coordinate), (Some(3), Some(0)));

        let v = validate_path(&genus_one(&[(0, 1), (1, 0), (7, 2)]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].step, Some(2));
        assert!(v[0].to_string().contains("not dual"));

        let v = validate_path(&genus_one(&[(1, 0), (0, 1), (1, 1)]));
        assert_eq!(v.len(), 2);

        let mut b = seven_two_path();
        b.mode = PathMode::B;
        b.systems.push(b.systems[3].clone());
        let v = validate_path(&b);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].step, v[0].coordinate), (Some(4), None));

        assert!(!validate_path(&genus_one(&[(0, 1), (1, 0)])).is_empty());
    }

    #[test]
    fn build_rejects_invalid_paths() {
        assert!(matches!(
            build_diagram(&genus_one(&[(0, 1), (1, 0), (7, 2)])),
            Err(Error::InvalidPath(_))
        ));
    }
}
