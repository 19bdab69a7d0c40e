//! Builder for the prototype E-arboreal spanning configurations.
//!
//! The ribbon layout lives in `data/genset_v1.json`. Each variant is a spine
//! (a chain `a_s, ..., a_{2g-1}` with one or two attached curves) and a list of
//! `2g - 3` leaves `b_1, ..., b_{2g-3}`, each crossing one odd spine curve. For a
//! partition `kappa` only the leaves `b_j` with `j` a partial sum
//! `kappa_1 + ... + kappa_l` (`l < n`) are kept.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{complementary_regions, Configuration, Crossing, CurveDecl};
use crate::error::{Error, Result};
use crate::surface::{FramedSurface, HalfInt, PartitionKappa, SurfaceType};

/// The shipped ribbon transcription.
pub const GENSET_DATA: &str = include_str!("../../data/genset_v1.json");

#[derive(Debug, Deserialize)]
struct GensetData {
    version: u32,
    variants: BTreeMap<String, Variant>,
    types: BTreeMap<String, TypeRule>,
}

#[derive(Debug, Deserialize)]
struct Variant {
    chain_start: usize,
    attach: Vec<Attach>,
    leaves: Vec<LeafRange>,
}

#[derive(Debug, Deserialize)]
struct Attach {
    host: String,
    curve: String,
    gap: usize,
}

#[derive(Debug, Deserialize)]
struct LeafRange {
    from: String,
    to: String,
    step: i64,
    gap: usize,
}

#[derive(Debug, Deserialize)]
struct TypeRule {
    odd_genus: String,
    even_genus: String,
}

/// Evaluates an index expression such as `"2g-3"` or `"7"`.
fn eval_index(expr: &str, g: usize) -> Result<i64> {
    let bad = || Error::Parse(format!("bad index expression {expr:?}"));
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut total = 0i64;
    let mut term = String::new();
    let mut flush = |term: &mut String| -> Result<()> {
        if term.is_empty() {
            return Ok(());
        }
        let (sign, body) = match term.as_bytes()[0] {
            b'-' => (-1, &term[1..]),
            b'+' => (1, &term[1..]),
            _ => (1, &term[..]),
        };
        let value = if let Some(coef) = body.strip_suffix('g') {
            let c = if coef.is_empty() {
                1
            } else {
                coef.parse::<i64>().map_err(|_| bad())?
            };
            c * g as i64
        } else {
            body.parse::<i64>().map_err(|_| bad())?
        };
        total += sign * value;
        term.clear();
        Ok(())
    };
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !term.is_empty() {
            flush(&mut term)?;
        }
        term.push(ch);
    }
    flush(&mut term)?;
    if compact.is_empty() {
        return Err(bad());
    }
    Ok(total)
}

/// Mutable ribbon under construction: crossings listed along each curve.
struct Draft {
    order: Vec<String>,
    along: BTreeMap<String, Vec<usize>>,
    crossings: Vec<(String, String)>,
}

impl Draft {
    fn new() -> Self {
        Draft {
            order: Vec::new(),
            along: BTreeMap::new(),
            crossings: Vec::new(),
        }
    }

    fn add_curve(&mut self, name: &str) {
        if !self.along.contains_key(name) {
            self.order.push(name.to_string());
            self.along.insert(name.to_string(), Vec::new());
        }
    }

    fn add_cross(&mut self, a: &str, b: &str, pos_a: usize, pos_b: usize) -> Result<()> {
        let id = self.crossings.len();
        for (curve, pos) in [(a, pos_a), (b, pos_b)] {
            let list = self
                .along
                .get_mut(curve)
                .ok_or_else(|| Error::UnknownCurve(curve.to_string()))?;
            if pos > list.len() {
                return Err(Error::Parse(format!(
                    "gap {pos} exceeds the {} crossings on `{curve}`",
                    list.len()
                )));
            }
            list.insert(pos, id);
        }
        self.crossings.push((a.to_string(), b.to_string()));
        Ok(())
    }

    fn remove_curve(&mut self, name: &str) {
        let ids: Vec<usize> = self.along.remove(name).unwrap_or_default();
        for list in self.along.values_mut() {
            list.retain(|x| !ids.contains(x));
        }
        self.order.retain(|n| n != name);
    }

    fn finish(self, surface: SurfaceType) -> Configuration {
        let curves = self
            .order
            .iter()
            .map(|n| CurveDecl {
                name: n.clone(),
                wn: 0,
            })
            .collect();
        let live: BTreeSet<usize> = self.along.values().flatten().copied().collect();
        let intersections = live
            .into_iter()
            .map(|id| {
                let (a, b) = &self.crossings[id];
                let pos = |c: &String| self.along[c].iter().position(|&x| x == id);
                Crossing {
                    a: a.clone(),
                    b: b.clone(),
                    sign: 1,
                    pos_a: pos(a),
                    pos_b: pos(b),
                }
            })
            .collect();
        Configuration {
            surface: Some(surface),
            curves,
            intersections,
        }
    }
}

/// A complementary face matched to a zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledFace {
    /// Position `l` of the part in `kappa`, 1-based.
    pub part: usize,
    /// Boundary label `kappa_1 + ... + kappa_l`.
    pub label: usize,
    pub sides: usize,
    pub signature: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GensetBuild {
    pub config: Configuration,
    /// A framing with these boundary values in which every curve of the
    /// system has winding number 0. Arc values are set to `-1/2`; they are
    /// not determined by the curve system.
    #[serde(skip)]
    pub framing: FramedSurface,
    pub faces: Vec<LabeledFace>,
    pub variant: String,
    pub warnings: Vec<String>,
}

/// Builds the prototype curve system of the given type (1 or 2) for `kappa`.
pub fn build_genset(kappa: &PartitionKappa, kind: u8) -> Result<GensetBuild> {
    let g = kappa.genus();
    let n = kappa.len();
    if kind != 1 && kind != 2 {
        return Err(Error::BadPartition(format!(
            "prototype type must be 1 or 2, got {kind}"
        )));
    }
    if g < 4 {
        return Err(Error::BadPartition(format!(
            "prototype curve systems need genus at least 4, kappa has genus {g}"
        )));
    }
    let mut warnings = Vec::new();
    if g < 5 {
        warnings.push(format!(
            "genus {g} is below 5; the construction is emitted unchecked"
        ));
    }
    let data: GensetData =
        serde_json::from_str(GENSET_DATA).map_err(|e| Error::Parse(format!("genset data: {e}")))?;
    debug_assert_eq!(data.version, 1);
    let rule = &data.types[&kind.to_string()];
    let variant_name = if g % 2 == 1 {
        &rule.odd_genus
    } else {
        &rule.even_genus
    };
    let variant = &data.variants[variant_name];

    let mut draft = Draft::new();
    for i in 0..2 * g {
        draft.add_curve(&format!("a{i}"));
    }
    for i in variant.chain_start..2 * g - 1 {
        let a = format!("a{i}");
        let end = draft.along[&a].len();
        draft.add_cross(&a, &format!("a{}", i + 1), end, 0)?;
    }
    for at in &variant.attach {
        draft.add_cross(&at.host, &at.curve, at.gap, 0)?;
    }
    let mut leaf = 0;
    for range in &variant.leaves {
        let (from, to) = (eval_index(&range.from, g)?, eval_index(&range.to, g)?);
        let mut host = from;
        while (range.step > 0 && host <= to) || (range.step < 0 && host >= to) {
            leaf += 1;
            let name = format!("b{leaf}");
            draft.add_curve(&name);
            draft.add_cross(&format!("a{host}"), &name, range.gap, 0)?;
            host += range.step;
        }
    }
    if leaf != 2 * g - 3 {
        return Err(Error::Parse(format!(
            "genset data produced {leaf} leaves, expected {}",
            2 * g - 3
        )));
    }

    let cuts: Vec<usize> = kappa
        .parts()
        .iter()
        .scan(0usize, |acc, &k| {
            *acc += k as usize;
            Some(*acc)
        })
        .take(n - 1)
        .collect();
    for j in 1..=2 * g - 3 {
        if !cuts.contains(&j) {
            draft.remove_curve(&format!("b{j}"));
        }
    }
    let surface = SurfaceType::new(g, n);
    let config = draft.finish(surface);
    let faces = label_faces(&config, kappa, &cuts)?;
    let framing = induced_framing(&config, kappa)?;
    Ok(GensetBuild {
        config,
        framing,
        faces,
        variant: variant_name.clone(),
        warnings,
    })
}

/// Matches faces to parts: the face of part `l` is bounded by the leaves
/// `b_{i_{l-1}}` and `b_{i_l}` (whichever exist), where `i_l` are the cuts.
fn label_faces(
    config: &Configuration,
    kappa: &PartitionKappa,
    cuts: &[usize],
) -> Result<Vec<LabeledFace>> {
    let regions = complementary_regions(config)?;
    let n = kappa.len();
    let leaf_sets: Vec<BTreeSet<&str>> = regions
        .faces
        .iter()
        .map(|f| {
            f.curves
                .iter()
                .map(String::as_str)
                .filter(|c| c.starts_with('b'))
                .collect()
        })
        .collect();
    let names: Vec<String> = cuts.iter().map(|j| format!("b{j}")).collect();
    let mut used = vec![false; regions.faces.len()];
    let mut out = Vec::with_capacity(n);
    for l in 0..n {
        let mut need = BTreeSet::new();
        if l > 0 {
            need.insert(names[l - 1].as_str());
        }
        if l + 1 < n {
            need.insert(names[l].as_str());
        }
        let k = kappa.parts()[l] as usize;
        let candidates: Vec<usize> = (0..regions.faces.len())
            .filter(|&i| !used[i] && leaf_sets[i] == need)
            .collect();
        let pick = candidates
            .iter()
            .copied()
            .find(|&i| regions.faces[i].sides == 4 * (k + 1))
            .or_else(|| candidates.first().copied())
            .ok_or_else(|| Error::Parse(format!("no face found for part {}", l + 1)))?;
        used[pick] = true;
        out.push(LabeledFace {
            part: l + 1,
            label: cuts.get(l).copied().unwrap_or(2 * kappa.genus() - 2),
            sides: regions.faces[pick].sides,
            signature: -1 - k as i64,
        });
    }
    Ok(out)
}

/// Framing with all system curves at winding number 0.
///
/// Winding numbers mod 2 of the curves give a quadratic form on the mod 2
/// span of the system. A symplectic basis of that form supplies the values
/// `phi = q - 1` on `x_i, y_i`.
fn induced_framing(config: &Configuration, kappa: &PartitionKappa) -> Result<FramedSurface> {
    let names = config.curve_names();
    let idx: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let m = names.len();
    let mut adj = vec![vec![0u8; m]; m];
    for x in &config.intersections {
        let (a, b) = (idx[x.a.as_str()], idx[x.b.as_str()]);
        adj[a][b] = 1;
        adj[b][a] = 1;
    }
    let qv: Vec<u8> = config
        .curves
        .iter()
        .map(|c| ((c.wn + 1).rem_euclid(2)) as u8)
        .collect();
    let pairs = symplectic_reduction(&adj, &qv);
    let g = kappa.genus();
    if pairs.len() != g {
        return Err(Error::Parse(format!(
            "curve system carries {} symplectic pairs, expected genus {g}",
            pairs.len()
        )));
    }
    let xy = pairs
        .iter()
        .flat_map(|&(qu, qw)| [i64::from(qu) - 1, i64::from(qw) - 1])
        .collect();
    FramedSurface::new(
        SurfaceType::new(g, kappa.len()),
        kappa.blowup_signature(),
        xy,
        vec![HalfInt::half_plus(-1); kappa.len() - 1],
    )
}

/// Symplectic reduction of a mod 2 form given by `adj`, with quadratic values
/// `qv` on the unit vectors. Returns `(q(u), q(w))` for each hyperbolic pair.
pub(crate) fn symplectic_reduction(adj: &[Vec<u8>], qv: &[u8]) -> Vec<(u8, u8)> {
    let m = adj.len();
    let form = |u: &[u8], v: &[u8]| -> u8 {
        let mut s = 0u8;
        for i in 0..m {
            if u[i] == 0 {
                continue;
            }
            for j in 0..m {
                s ^= u[i] & adj[i][j] & v[j];
            }
        }
        s
    };
    let quad = |v: &[u8]| -> u8 {
        let mut s = 0u8;
        for i in 0..m {
            s ^= v[i] & qv[i];
            for j in i + 1..m {
                s ^= v[i] & v[j] & adj[i][j];
            }
        }
        s
    };
    let mut pool: Vec<Vec<u8>> = (0..m)
        .map(|i| (0..m).map(|j| u8::from(i == j)).collect())
        .collect();
    let mut pairs = Vec::new();
    while !pool.is_empty() {
        let u = pool.remove(0);
        let Some(k) = pool.iter().position(|v| form(&u, v) == 1) else {
            continue;
        };
        let w = pool.remove(k);
        pairs.push((quad(&u), quad(&w)));
        pool = pool
            .into_iter()
            .map(|v| {
                let (fw, fu) = (form(&v, &w), form(&v, &u));
                (0..m).map(|i| v[i] ^ (fw & u[i]) ^ (fu & w[i])).collect()
            })
            .collect();
    }
    pairs
}
