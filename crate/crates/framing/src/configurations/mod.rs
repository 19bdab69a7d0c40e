//! Curve systems with ribbon data: intersection graphs, boundary tracing of
//! regular neighborhoods, and the spanning/assemblage predicates.
//!
//! Ribbon model. Each crossing `(a, b, sign)` is a 4-valent vertex. Walking
//! counterclockwise around it one meets the half-edges
//! `[a_out, b_out, a_in, b_in]` when `sign > 0` and `[a_out, b_in, a_in, b_out]`
//! otherwise. Positions order the crossings along each curve, so curve `c` with
//! `L` crossings contributes `L` edges, edge `i` running from its `i`-th to its
//! `(i+1)`-th crossing.

mod genset;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SurfaceType;

pub use genset::{build_genset, GensetBuild, LabeledFace, GENSET_DATA};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDecl {
    pub name: String,
    #[serde(default)]
    pub wn: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub a: String,
    pub b: String,
    pub sign: i8,
    #[serde(default)]
    pub pos_a: Option<usize>,
    #[serde(default)]
    pub pos_b: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    /// Ambient surface; when absent the neighborhood itself is the ambient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceType>,
    pub curves: Vec<CurveDecl>,
    pub intersections: Vec<Crossing>,
}

impl Configuration {
    /// Validates names, signs and the one-crossing-per-pair rule. Ribbon
    /// positions are checked by the operations that need them.
    pub fn new(
        surface: Option<SurfaceType>,
        curves: Vec<CurveDecl>,
        intersections: Vec<Crossing>,
    ) -> Result<Self> {
        let c = Configuration {
            surface,
            curves,
            intersections,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let c: Configuration =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for c in &self.curves {
            if !names.insert(c.name.as_str()) {
                return Err(Error::Parse(format!("duplicate curve `{}`", c.name)));
            }
        }
        let mut pairs = BTreeSet::new();
        for x in &self.intersections {
            for n in [&x.a, &x.b] {
                if !names.contains(n.as_str()) {
                    return Err(Error::UnknownCurve(n.clone()));
                }
            }
            if x.a == x.b {
                return Err(Error::Parse(format!("self-crossing on `{}`", x.a)));
            }
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::Parse(format!(
                    "crossing sign must be +1 or -1, got {}",
                    x.sign
                )));
            }
            let key = if x.a < x.b {
                (&x.a, &x.b)
            } else {
                (&x.b, &x.a)
            };
            if !pairs.insert(key) {
                return Err(Error::Parse(format!(
                    "`{}` and `{}` cross more than once",
                    x.a, x.b
                )));
            }
        }
        Ok(())
    }

    pub fn curve_names(&self) -> Vec<&str> {
        self.curves.iter().map(|c| c.name.as_str()).collect()
    }

    /// The sub-configuration on `keep`, with positions renumbered along each
    /// curve so cyclic orders are preserved.
    pub fn restrict(&self, keep: &BTreeSet<&str>) -> Result<Configuration> {
        let ribbon = Ribbon::new(self)?;
        let curves: Vec<CurveDecl> = self
            .curves
            .iter()
            .filter(|c| keep.contains(c.name.as_str()))
            .cloned()
            .collect();
        let kept: Vec<usize> = (0..self.intersections.len())
            .filter(|&i| {
                let x = &self.intersections[i];
                keep.contains(x.a.as_str()) && keep.contains(x.b.as_str())
            })
            .collect();
        let mut new_pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (ci, list) in ribbon.along.iter().enumerate() {
            let mut next = 0;
            for &x in list {
                if kept.contains(&x) {
                    new_pos.insert((ci, x), next);
                    next += 1;
                }
            }
        }
        let intersections = kept
            .iter()
            .map(|&i| {
                let x = &self.intersections[i];
                let (ca, cb) = (ribbon.index[&x.a], ribbon.index[&x.b]);
                Crossing {
                    pos_a: Some(new_pos[&(ca, i)]),
                    pos_b: Some(new_pos[&(cb, i)]),
                    ..x.clone()
                }
            })
            .collect();
        Ok(Configuration {
            surface: None,
            curves,
            intersections,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum End {
    Out,
    In,
}

/// A directed edge: curve index, edge index along the curve, direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub curve: usize,
    pub edge: usize,
    pub forward: bool,
}

/// Resolved ribbon structure: crossings listed along each curve.
struct Ribbon<'a> {
    config: &'a Configuration,
    index: BTreeMap<String, usize>,
    along: Vec<Vec<usize>>,
}

impl<'a> Ribbon<'a> {
    fn new(config: &'a Configuration) -> Result<Self> {
        let index: BTreeMap<String, usize> = config
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), i))
            .collect();
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); config.curves.len()];
        for (xi, x) in config.intersections.iter().enumerate() {
            let (pa, pb) = match (x.pos_a, x.pos_b) {
                (Some(pa), Some(pb)) => (pa, pb),
                _ => {
                    return Err(Error::RibbonIncomplete(format!(
                        "crossing {}/{} has no position",
                        x.a, x.b
                    )))
                }
            };
            slots[index[&x.a]].push((pa, xi));
            slots[index[&x.b]].push((pb, xi));
        }
        let mut along = Vec::with_capacity(slots.len());
        for (ci, mut s) in slots.into_iter().enumerate() {
            s.sort_unstable();
            if s.iter().enumerate().any(|(k, &(p, _))| p != k) {
                return Err(Error::RibbonIncomplete(format!(
                    "positions along `{}` must be 0..{}",
                    config.curves[ci].name,
                    s.len()
                )));
            }
            along.push(s.into_iter().map(|(_, x)| x).collect());
        }
        Ok(Ribbon {
            config,
            index,
            along,
        })
    }

    fn rotation(&self, x: usize) -> [(usize, End); 4] {
        let c = &self.config.intersections[x];
        let (a, b) = (self.index[&c.a], self.index[&c.b]);
        if c.sign > 0 {
            [(a, End::Out), (b, End::Out), (a, End::In), (b, End::In)]
        } else {
            [(a, End::Out), (b, End::In), (a, End::In), (b, End::Out)]
        }
    }

    fn next_dart(&self, d: Dart) -> Dart {
        let pts = &self.along[d.curve];
        let k = pts.len();
        let (v, h) = if d.forward {
            (pts[(d.edge + 1) % k], (d.curve, End::In))
        } else {
            (pts[d.edge], (d.curve, End::Out))
        };
        let rot = self.rotation(v);
        let j = rot
            .iter()
            .position(|&r| r == h)
            .expect("half-edge at its vertex");
        let (nc, nend) = rot[(j + 1) % 4];
        let npts = &self.along[nc];
        let idx = npts.iter().position(|&p| p == v).expect("vertex on curve");
        match nend {
            End::Out => Dart {
                curve: nc,
                edge: idx,
                forward: true,
            },
            End::In => Dart {
                curve: nc,
                edge: (idx + npts.len() - 1) % npts.len(),
                forward: false,
            },
        }
    }

    fn faces(&self) -> Vec<Face> {
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for (ci, pts) in self.along.iter().enumerate() {
            if pts.is_empty() {
                for _ in 0..2 {
                    faces.push(Face {
                        sides: 0,
                        darts: Vec::new(),
                        curves: BTreeSet::from([self.config.curves[ci].name.clone()]),
                    });
                }
                continue;
            }
            for edge in 0..pts.len() {
                for forward in [true, false] {
                    let start = Dart {
                        curve: ci,
                        edge,
                        forward,
                    };
                    if seen.contains(&start) {
                        continue;
                    }
                    let mut darts = Vec::new();
                    let mut cur = start;
                    while seen.insert(cur) {
                        darts.push(cur);
                        cur = self.next_dart(cur);
                    }
                    let curves = darts
                        .iter()
                        .map(|d| self.config.curves[d.curve].name.clone())
                        .collect();
                    faces.push(Face {
                        sides: darts.len(),
                        darts,
                        curves,
                    });
                }
            }
        }
        faces
    }
}

/// A boundary component of the regular neighborhood, seen as a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub sides: usize,
    pub darts: Vec<Dart>,
    /// Curves contributing sides.
    pub curves: BTreeSet<String>,
}

impl Face {
    /// Winding number `-sides / 4` of the face boundary; `None` when the side
    /// count is not a multiple of 4.
    pub fn winding_number(&self) -> Option<i64> {
        self.sides
            .is_multiple_of(4)
            .then(|| -(self.sides as i64) / 4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regions {
    pub faces: Vec<Face>,
    /// Euler characteristic of the regular neighborhood.
    pub euler_characteristic: i64,
    pub components: usize,
    pub genus: usize,
    /// Faces whose side count is not a multiple of 4.
    pub diagnostics: Vec<String>,
}

impl Regions {
    /// Number of faces that must be capped by disks to reach `ambient`, when
    /// the neighborhood's genus matches. `None` if it cannot fill `ambient`.
    pub fn disk_faces_in(&self, ambient: SurfaceType) -> Option<usize> {
        (self.components == 1
            && self.genus == ambient.genus
            && self.faces.len() >= ambient.boundaries)
            .then(|| self.faces.len() - ambient.boundaries)
    }
}

/// Traces the boundary of the regular neighborhood.
pub fn complementary_regions(c: &Configuration) -> Result<Regions> {
    let ribbon = Ribbon::new(c)?;
    let faces = ribbon.faces();
    let euler = -(c.intersections.len() as i64);
    let components = intersection_graph(c).components();
    let twice_genus = 2 * components as i64 - euler - faces.len() as i64;
    debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
    let diagnostics = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.sides % 4 != 0)
        .map(|(i, f)| format!("face {i} has {} sides, not a multiple of 4", f.sides))
        .collect();
    Ok(Regions {
        faces,
        euler_characteristic: euler,
        components,
        genus: (twice_genus / 2) as usize,
        diagnostics,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionGraph {
    pub vertices: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl IntersectionGraph {
    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    pub fn components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.components() == 1
            && self.edges.len() + 1 == self.vertices.len()
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adjacency().iter().all(|n| n.len() <= 2)
    }

    /// An embedding of the E6 Dynkin diagram, if any: returned as the branch
    /// vertex followed by the arms `(p1, p2)`, `(q1, q2)` and `(r1)`.
    pub fn find_e6(&self) -> Option<[usize; 6]> {
        let adj = self.adjacency();
        for center in 0..self.vertices.len() {
            let nb: Vec<usize> = adj[center].iter().copied().collect();
            for &p1 in &nb {
                for &q1 in &nb {
                    if q1 <= p1 {
                        continue;
                    }
                    for &r1 in &nb {
                        if r1 == p1 || r1 == q1 {
                            continue;
                        }
                        let used = [center, p1, q1, r1];
                        for &p2 in &adj[p1] {
                            if used.contains(&p2) {
                                continue;
                            }
                            for &q2 in &adj[q1] {
                                if used.contains(&q2) || q2 == p2 {
                                    continue;
                                }
                                return Some([center, p1, p2, q1, q2, r1]);
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

pub fn intersection_graph(c: &Configuration) -> IntersectionGraph {
    let index: BTreeMap<&str, usize> = c
        .curves
        .iter()
        .enumerate()
        .map(|(i, d)| (d.name.as_str(), i))
        .collect();
    let edges = c
        .intersections
        .iter()
        .map(|x| {
            let (u, v) = (index[x.a.as_str()], index[x.b.as_str()]);
            (u.min(v), u.max(v))
        })
        .collect();
    IntersectionGraph {
        vertices: c.curves.iter().map(|d| d.name.clone()).collect(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArborealDiagnosis {
    pub holds: bool,
    pub is_tree: bool,
    pub contains_e6: bool,
    pub curve_count: usize,
    pub expected_curve_count: usize,
    pub neighborhood_genus: usize,
    pub faces: usize,
    pub ambient: SurfaceType,
    pub notes: Vec<String>,
}

/// Tree intersection graph containing E6 whose neighborhood is the whole
/// ambient surface.
pub fn is_e_arboreal_spanning(c: &Configuration) -> Result<ArborealDiagnosis> {
    let regions = complementary_regions(c)?;
    let graph = intersection_graph(c);
    let mut notes = Vec::new();
    let ambient = c.surface.unwrap_or_else(|| {
        notes.push("no ambient surface given; using the neighborhood itself".to_string());
        SurfaceType::new(regions.genus, regions.faces.len())
    });
    let is_tree = graph.is_tree();
    let contains_e6 = graph.find_e6().is_some();
    let expected = ambient.rank();
    let spans = regions.disk_faces_in(ambient) == Some(0);
    if !is_tree {
        notes.push("intersection graph is not a tree".into());
    }
    if !contains_e6 {
        notes.push("intersection graph has no E6 subgraph".into());
    }
    if c.curves.len() != expected {
        notes.push(format!(
            "{} curves, spanning needs {expected}",
            c.curves.len()
        ));
    }
    if !spans {
        notes.push(format!(
            "neighborhood has genus {} and {} boundary components, ambient is ({}, {})",
            regions.genus,
            regions.faces.len(),
            ambient.genus,
            ambient.boundaries
        ));
    }
    Ok(ArborealDiagnosis {
        holds: is_tree && contains_e6 && c.curves.len() == expected && spans,
        is_tree,
        contains_e6,
        curve_count: c.curves.len(),
        expected_curve_count: expected,
        neighborhood_genus: regions.genus,
        faces: regions.faces.len(),
        ambient,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssemblageReport {
    pub holds: bool,
    /// Genus of the arboreal core's neighborhood.
    pub h: usize,
    pub failures: Vec<String>,
}

/// Checks that `order` builds the surface from an E-arboreal core (its first
/// `core` curves) by adding curves that each meet the previous neighborhood in
/// one arc. "One arc" is read combinatorially: the new curve's crossings with
/// earlier curves form a single nonempty block in its cyclic order.
pub fn is_h_assemblage_type_e(
    c: &Configuration,
    order: &[&str],
    core: usize,
) -> Result<AssemblageReport> {
    let names: BTreeSet<&str> = c.curve_names().into_iter().collect();
    let listed: BTreeSet<&str> = order.iter().copied().collect();
    if listed != names || order.len() != names.len() {
        return Err(Error::Parse(
            "order must list every curve exactly once".into(),
        ));
    }
    if core == 0 || core > order.len() {
        return Err(Error::Parse(format!("core length {core} out of range")));
    }
    let mut failures = Vec::new();
    let core_set: BTreeSet<&str> = order[..core].iter().copied().collect();
    let core_cfg = c.restrict(&core_set)?;
    let core_diag = is_e_arboreal_spanning(&core_cfg)?;
    if !(core_diag.is_tree && core_diag.contains_e6) {
        failures.push(format!(
            "core is not E-arboreal: {}",
            core_diag.notes.join("; ")
        ));
    }
    let h = core_diag.neighborhood_genus;

    let ribbon = Ribbon::new(c)?;
    let rank: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    for (j, &name) in order.iter().enumerate().skip(core) {
        let ci = ribbon.index[name];
        let earlier: Vec<bool> = ribbon.along[ci]
            .iter()
            .map(|&x| {
                let cr = &c.intersections[x];
                let other = if cr.a == name { &cr.b } else { &cr.a };
                rank[other.as_str()] < j
            })
            .collect();
        if !single_block(&earlier) {
            failures.push(format!(
                "`{name}` does not meet the earlier neighborhood in a single arc"
            ));
        }
    }
    let regions = complementary_regions(c)?;
    let ambient = c
        .surface
        .unwrap_or_else(|| SurfaceType::new(regions.genus, regions.faces.len()));
    if regions.disk_faces_in(ambient) != Some(0) {
        failures.push(format!(
            "final neighborhood has genus {} with {} boundary components, ambient is ({}, {})",
            regions.genus,
            regions.faces.len(),
            ambient.genus,
            ambient.boundaries
        ));
    }
    Ok(AssemblageReport {
        holds: failures.is_empty(),
        h,
        failures,
    })
}

/// True when the `true` entries are nonempty and cyclically consecutive.
fn single_block(flags: &[bool]) -> bool {
    let n = flags.len();
    let count = flags.iter().filter(|&&f| f).count();
    if count == 0 {
        return false;
    }
    let starts = (0..n)
        .filter(|&i| flags[i] && !flags[(i + n - 1) % n])
        .count();
    starts == 1 || count == n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sidedness {
    OneSided,
    TwoSided,
    Inconsistent,
}

/// Classifies a pair of equal-winding-number arcs from their boundary values:
/// one-sided iff the observed pair is `{1, phi_p + phi_q + 1}`, two-sided iff it
/// is `{phi_p + 1, phi_q + 1}`.
pub fn classify_sidedness(phi_p: i64, phi_q: i64, observed: (i64, i64)) -> Sidedness {
    let sorted = |a: i64, b: i64| (a.min(b), a.max(b));
    let seen = sorted(observed.0, observed.1);
    if seen == sorted(1, phi_p + phi_q + 1) {
        Sidedness::OneSided
    } else if seen == sorted(phi_p + 1, phi_q + 1) {
        Sidedness::TwoSided
    } else {
        Sidedness::Inconsistent
    }
}

/// Builds a chain `c1 - c2 - ... - cm` with every crossing positive.
pub fn chain(m: usize, surface: Option<SurfaceType>) -> Configuration {
    let curves = (1..=m)
        .map(|i| CurveDecl {
            name: format!("c{i}"),
            wn: 0,
        })
        .collect();
    let intersections = (1..m)
        .map(|i| Crossing {
            a: format!("c{i}"),
            b: format!("c{}", i + 1),
            sign: 1,
            pos_a: Some(usize::from(i > 1)),
            pos_b: Some(0),
        })
        .collect();
    Configuration {
        surface,
        curves,
        intersections,
    }
}
