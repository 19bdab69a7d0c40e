//! Action of Dehn twists, fractional boundary twists and point-pushes on
//! tracked winding numbers and on homology.
//!
//! Conventions. A mapping class `f` acts on framings by pullback,
//! `(f . phi)(t) = phi(f^{-1}(t))`, so tracked objects keep their homology
//! classes and only their winding numbers change. For a twist about `a` this
//! gives `wn(t) <- wn(t) - m <t, a> wn(a)`. The homology action accumulates the
//! pushforward `v -> v + m <v, a> a`. Words are read left to right: the word
//! `[f1, f2]` is the mapping class `f2 . f1`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{
    intersection, narrow, wide_dot, FramedSurface, HalfInt, HomologyClass, SurfaceType,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrackedCurve {
    pub name: String,
    pub homology: HomologyClass,
    pub wn: i64,
    /// Declared by the caller; only meaningful for null-homologous curves.
    pub separating: bool,
}

impl TrackedCurve {
    /// Nonseparating with winding number zero.
    pub fn is_admissible(&self) -> bool {
        !self.homology.is_zero() && !self.separating && self.wn == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrackedArc {
    pub name: String,
    pub homology: HomologyClass,
    pub wn: HalfInt,
}

/// One generator power in a mapping word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Letter {
    /// `T_c^pow`
    Twist { twist: String, pow: i64 },
    /// `T_{D_i}^{pow / k_i}` with `k_i = |phi(D_i)|`.
    Frac { frac: usize, pow: i64 },
    /// Point-push about a loop, given by absolute coefficients.
    Push { push: Vec<i64> },
}

impl Letter {
    pub fn twist(name: impl Into<String>, pow: i64) -> Self {
        Letter::Twist {
            twist: name.into(),
            pow,
        }
    }

    pub fn frac(boundary: usize, pow: i64) -> Self {
        Letter::Frac {
            frac: boundary,
            pow,
        }
    }

    pub fn push(class: &HomologyClass) -> Self {
        Letter::Push {
            push: class.coeffs().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MappingWord(pub Vec<Letter>);

impl MappingWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        MappingWord(letters)
    }

    pub fn then(mut self, other: &MappingWord) -> Self {
        self.0.extend(other.0.iter().cloned());
        self
    }

    /// The word repeated `times` times.
    pub fn power(&self, times: usize) -> Self {
        MappingWord(
            std::iter::repeat_n(self.0.iter().cloned(), times)
                .flatten()
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Framing plus tracked curves and arcs, with the accumulated homology action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineState {
    framing: FramedSurface,
    curves: BTreeMap<String, TrackedCurve>,
    arcs: BTreeMap<String, TrackedArc>,
    action: Vec<Vec<i64>>,
}

/// Name of the tracked basis curve `x_i`.
pub fn x_name(i: usize) -> String {
    format!("x{i}")
}

/// Name of the tracked basis curve `y_i`.
pub fn y_name(i: usize) -> String {
    format!("y{i}")
}

/// Name of the tracked basis arc `a_j` from boundary 1 to boundary `j`.
pub fn arc_name(j: usize) -> String {
    format!("a{j}")
}

/// Name of the tracked curve parallel to boundary `j`.
pub fn boundary_name(j: usize) -> String {
    format!("D{j}")
}

impl EngineState {
    /// Tracks the distinguished basis (`x_i`, `y_i`, `a_j`) and one curve
    /// parallel to each boundary component (`D_j`).
    pub fn new(framing: FramedSurface) -> Self {
        let s = framing.surface();
        let mut curves = BTreeMap::new();
        let mut arcs = BTreeMap::new();
        for i in 1..=s.genus {
            for (name, class, wn) in [
                (x_name(i), s.x(i), framing.x(i)),
                (y_name(i), s.y(i), framing.y(i)),
            ] {
                curves.insert(
                    name.clone(),
                    TrackedCurve {
                        name,
                        homology: class,
                        wn,
                        separating: false,
                    },
                );
            }
        }
        for j in 1..=s.boundaries {
            let homology = s.boundary_class(j);
            let name = boundary_name(j);
            curves.insert(
                name.clone(),
                TrackedCurve {
                    name,
                    separating: homology.is_zero(),
                    homology,
                    wn: framing.signature()[j - 1],
                },
            );
        }
        for j in 2..=s.boundaries {
            let name = arc_name(j);
            arcs.insert(
                name.clone(),
                TrackedArc {
                    name,
                    homology: s.arc(1, j),
                    wn: framing.arc(j),
                },
            );
        }
        let rank = s.rank();
        let action = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        EngineState {
            framing,
            curves,
            arcs,
            action,
        }
    }

    pub fn surface(&self) -> SurfaceType {
        self.framing.surface()
    }

    /// The framing the state was created from.
    pub fn initial_framing(&self) -> &FramedSurface {
        &self.framing
    }

    /// The current framing, read off the tracked basis.
    pub fn current_framing(&self) -> FramedSurface {
        let s = self.surface();
        let mut xy = Vec::with_capacity(2 * s.genus);
        for i in 1..=s.genus {
            xy.push(self.curves[&x_name(i)].wn);
            xy.push(self.curves[&y_name(i)].wn);
        }
        let arcs = (2..=s.boundaries)
            .map(|j| self.arcs[&arc_name(j)].wn)
            .collect();
        FramedSurface::new(s, self.framing.signature().to_vec(), xy, arcs)
            .expect("twists preserve basis typing and the boundary signature")
    }

    pub fn curves(&self) -> impl Iterator<Item = &TrackedCurve> {
        self.curves.values()
    }

    pub fn arcs(&self) -> impl Iterator<Item = &TrackedArc> {
        self.arcs.values()
    }

    pub fn curve(&self, name: &str) -> Result<&TrackedCurve> {
        self.curves
            .get(name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn arc(&self, name: &str) -> Result<&TrackedArc> {
        self.arcs
            .get(name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    /// Accumulated action on absolute homology; column `j` is the image of
    /// basis vector `j`.
    pub fn action(&self) -> &[Vec<i64>] {
        &self.action
    }

    /// Every tracked winding number, keyed by name.
    pub fn wn_snapshot(&self) -> BTreeMap<String, HalfInt> {
        let mut out: BTreeMap<String, HalfInt> = self
            .curves
            .values()
            .map(|c| (c.name.clone(), HalfInt::from_int(c.wn)))
            .collect();
        out.extend(self.arcs.values().map(|a| (a.name.clone(), a.wn)));
        out
    }

    fn check_free(&self, name: &str) -> Result<()> {
        if self.curves.contains_key(name) || self.arcs.contains_key(name) {
            return Err(Error::TypeViolation(format!("`{name}` is already tracked")));
        }
        Ok(())
    }

    fn check_class(&self, class: &HomologyClass) -> Result<()> {
        if class.genus() != self.surface().genus || class.coeffs().len() != self.surface().rank() {
            return Err(Error::KindMismatch(
                "class does not belong to this surface".into(),
            ));
        }
        Ok(())
    }

    /// Starts tracking a curve with the given class and winding number.
    pub fn with_curve(
        mut self,
        name: impl Into<String>,
        homology: HomologyClass,
        wn: i64,
    ) -> Result<Self> {
        let name = name.into();
        self.check_free(&name)?;
        self.check_class(&homology)?;
        if !homology.is_absolute() {
            return Err(Error::KindMismatch(format!(
                "curve `{name}` needs an absolute class"
            )));
        }
        let separating = homology.is_zero();
        self.curves.insert(
            name.clone(),
            TrackedCurve {
                name,
                homology,
                wn,
                separating,
            },
        );
        Ok(self)
    }

    /// Starts tracking an arc; its winding number must lie in `Z + 1/2`.
    pub fn with_arc(
        mut self,
        name: impl Into<String>,
        homology: HomologyClass,
        wn: HalfInt,
    ) -> Result<Self> {
        let name = name.into();
        self.check_free(&name)?;
        self.check_class(&homology)?;
        if homology.is_absolute() {
            return Err(Error::KindMismatch(format!(
                "arc `{name}` needs a relative class"
            )));
        }
        if !wn.is_strict_half() {
            return Err(Error::TypeViolation(format!(
                "arc value {wn} is not in Z + 1/2"
            )));
        }
        self.arcs
            .insert(name.clone(), TrackedArc { name, homology, wn });
        Ok(self)
    }

    /// Pullback by `T_a^m`.
    pub fn apply_twist(&self, name: &str, m: i64) -> Result<Self> {
        let a = self.curve(name)?.clone();
        let mut next = self.clone();
        for t in next.curves.values_mut() {
            let shift = product(m, intersection(&t.homology, &a.homology)?, a.wn)?;
            t.wn = t.wn.checked_sub(shift).ok_or_else(|| overflow(&t.name))?;
        }
        for t in next.arcs.values_mut() {
            let shift = product(m, intersection(&t.homology, &a.homology)?, a.wn)?;
            t.wn =
                t.wn.checked_sub_int(shift)
                    .ok_or_else(|| overflow(&t.name))?;
        }
        next.action = compose_transvection(&self.action, &a.homology, m)?;
        Ok(next)
    }

    /// Pullback by the fractional twist `T_{D_i}^{m / k_i}`.
    ///
    /// Arcs shift by `-m <arc, D_i> sign(phi(D_i))` per incidence: with the
    /// holomorphic sign `phi(D_i) < 0`, an arc ending on `D_i` gains `m`. For
    /// `m = k_i` this is the pullback by a full twist about `D_i`.
    pub fn apply_fractional_twist(&self, i: usize, m: i64) -> Result<Self> {
        let s = self.surface();
        if i == 0 || i > s.boundaries {
            return Err(Error::UnknownBoundary(i));
        }
        let phi = self.framing.signature()[i - 1];
        if phi == 0 {
            return Err(Error::Unsupported(format!(
                "boundary {i} has winding number 0 and carries no prongs"
            )));
        }
        let delta = s.boundary_class(i);
        let mut next = self.clone();
        for t in next.arcs.values_mut() {
            let shift = product(m, intersection(&t.homology, &delta)?, phi.signum())?;
            t.wn =
                t.wn.checked_sub_int(shift)
                    .ok_or_else(|| overflow(&t.name))?;
        }
        Ok(next)
    }

    /// Pullback by the point-push about `gamma` on a surface with one boundary
    /// component: `wn(a) <- wn(a) - <a, gamma> (2 - 2g)`.
    ///
    /// This agrees with the word `[Twist(gamma_L, 1), Twist(gamma_R, -1)]` when
    /// `gamma_L` and `gamma_R` are homologous to `gamma` with
    /// `wn(gamma_L) - wn(gamma_R) = 2 - 2g`.
    pub fn apply_push(&self, gamma: &HomologyClass) -> Result<Self> {
        let s = self.surface();
        if s.boundaries != 1 {
            return Err(Error::WrongBoundaryCount(s.boundaries));
        }
        self.check_class(gamma)?;
        if !gamma.is_absolute() {
            return Err(Error::KindMismatch(
                "push loops are absolute classes".into(),
            ));
        }
        let chi_closed = 2 - 2 * s.genus as i64;
        let mut next = self.clone();
        for t in next.curves.values_mut() {
            let shift = product(1, intersection(&t.homology, gamma)?, chi_closed)?;
            t.wn = t.wn.checked_sub(shift).ok_or_else(|| overflow(&t.name))?;
        }
        Ok(next)
    }

    /// Tracks the curve-arc sum of `a` (curve or arc) with the curve `b` under
    /// the name `new`: class `[a] + [b]`, winding number `wn(a) + wn(b) + 1`.
    pub fn curve_arc_sum(&self, a: &str, b: &str, new: &str) -> Result<Self> {
        if self.arcs.contains_key(b) {
            return Err(Error::KindMismatch(format!(
                "`{b}` is an arc; the second summand must be a curve"
            )));
        }
        let bc = self.curve(b)?.clone();
        if let Some(arc) = self.arcs.get(a) {
            let homology = arc.homology.add(&bc.homology)?;
            let wn = bc
                .wn
                .checked_add(1)
                .and_then(|v| v.checked_mul(2))
                .and_then(|d| arc.wn.checked_add(HalfInt::from_doubled(d)));
            return self
                .clone()
                .with_arc(new, homology, wn.ok_or_else(|| overflow(new))?);
        }
        let ac = self.curve(a)?;
        let homology = ac.homology.add(&bc.homology)?;
        let wn = ac.wn.checked_add(bc.wn).and_then(|w| w.checked_add(1));
        self.clone()
            .with_curve(new, homology, wn.ok_or_else(|| overflow(new))?)
    }

    pub fn apply_letter(&self, letter: &Letter) -> Result<Self> {
        match letter {
            Letter::Twist { twist, pow } => self.apply_twist(twist, *pow),
            Letter::Frac { frac, pow } => self.apply_fractional_twist(*frac, *pow),
            Letter::Push { push } => {
                let gamma = self.surface().absolute(push.clone())?;
                self.apply_push(&gamma)
            }
        }
    }

    pub fn apply_word(&self, word: &MappingWord) -> Result<Self> {
        word.0
            .iter()
            .try_fold(self.clone(), |state, letter| state.apply_letter(letter))
    }

    /// True iff the word leaves every tracked winding number unchanged.
    pub fn stabilizes(&self, word: &MappingWord) -> Result<bool> {
        Ok(self.apply_word(word)?.wn_snapshot() == self.wn_snapshot())
    }

    /// Compares the two words on homology and on all tracked winding numbers.
    pub fn verify_relation(
        &self,
        left: &MappingWord,
        right: &MappingWord,
    ) -> Result<RelationReport> {
        let l = self.apply_word(left)?;
        let r = self.apply_word(right)?;
        Ok(RelationReport {
            homology_equal: l.action == r.action,
            wn_equal: l.wn_snapshot() == r.wn_snapshot(),
            scope: RELATION_SCOPE.to_string(),
        })
    }

    /// Winding numbers reached by `c` under words of length at most `depth`
    /// in twists about `generators`.
    ///
    /// With `curve_arc_sums` set, each visited state also contributes
    /// `wn(c) + wn(g) + 1` for every generator `g` disjoint from `c` in
    /// homology and not homologous to a multiple of it.
    pub fn orbit_wn_values(
        &self,
        c: &str,
        generators: &[&str],
        options: OrbitOptions,
    ) -> Result<OrbitReport> {
        let names: Vec<&String> = self.curves.keys().collect();
        let index = |n: &str| -> Result<usize> {
            names
                .iter()
                .position(|k| k.as_str() == n)
                .ok_or_else(|| Error::UnknownCurve(n.to_string()))
        };
        let ci = index(c)?;
        let gens = generators
            .iter()
            .map(|g| index(g))
            .collect::<Result<Vec<_>>>()?;
        let classes: Vec<&HomologyClass> =
            names.iter().map(|n| &self.curves[*n].homology).collect();
        let mut pairing = vec![vec![0i64; gens.len()]; names.len()];
        for (i, row) in pairing.iter_mut().enumerate() {
            for (gj, &g) in gens.iter().enumerate() {
                row[gj] = intersection(classes[i], classes[g])?;
            }
        }
        let summable: Vec<usize> = if options.curve_arc_sums {
            gens.iter()
                .enumerate()
                .filter(|&(gj, &g)| {
                    g != ci && pairing[ci][gj] == 0 && !proportional(classes[ci], classes[g])
                })
                .map(|(gj, _)| gj)
                .collect()
        } else {
            Vec::new()
        };

        let start: Vec<i64> = names.iter().map(|n| self.curves[*n].wn).collect();
        let mut values = BTreeSet::new();
        let record = |w: &[i64], values: &mut BTreeSet<i64>| {
            values.insert(w[ci]);
            for &gj in &summable {
                values.insert(w[ci] + w[gens[gj]] + 1);
            }
        };
        record(&start, &mut values);
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        let mut history = vec![gcd_of(&values)];
        let mut stabilized = false;
        let mut depth_reached = 0;
        for depth in 1..=options.depth {
            let mut next = Vec::new();
            for w in &frontier {
                for (gj, &g) in gens.iter().enumerate() {
                    for m in [1i64, -1] {
                        let wg = w[g];
                        let image: Vec<i64> = w
                            .iter()
                            .enumerate()
                            .map(|(i, &v)| v - m * pairing[i][gj] * wg)
                            .collect();
                        if seen.insert(image.clone()) {
                            record(&image, &mut values);
                            next.push(image);
                        }
                    }
                }
            }
            frontier = next;
            depth_reached = depth;
            history.push(gcd_of(&values));
            let n = history.len();
            if history[n - 1] == history[n - 2] {
                stabilized = true;
                if options.stop_when_stable {
                    break;
                }
            } else {
                stabilized = false;
            }
            if frontier.is_empty() {
                stabilized = true;
                break;
            }
        }
        Ok(OrbitReport {
            gcd: *history.last().expect("history starts non-empty"),
            values,
            gcd_by_depth: history,
            stabilized,
            depth_reached,
        })
    }
}

/// Wording attached to every relation report.
pub const RELATION_SCOPE: &str =
    "necessary conditions only: equal homology action and equal action on tracked winding numbers";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub homology_equal: bool,
    pub wn_equal: bool,
    pub scope: String,
}

impl RelationReport {
    pub fn passes(&self) -> bool {
        self.homology_equal && self.wn_equal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitOptions {
    pub depth: usize,
    pub curve_arc_sums: bool,
    /// Stop as soon as the gcd is unchanged between two consecutive depths.
    pub stop_when_stable: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            depth: 12,
            curve_arc_sums: true,
            stop_when_stable: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub values: BTreeSet<i64>,
    pub gcd: u64,
    /// gcd of the values collected up to each depth, starting at depth 0.
    pub gcd_by_depth: Vec<u64>,
    pub stabilized: bool,
    pub depth_reached: usize,
}

fn gcd_of(values: &BTreeSet<i64>) -> u64 {
    values
        .iter()
        .fold(0u64, |acc, &v| num_integer::gcd(acc, v.unsigned_abs()))
}

fn proportional(a: &HomologyClass, b: &HomologyClass) -> bool {
    let (a, b) = (a.coeffs(), b.coeffs());
    (0..a.len()).all(|i| (i..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// Symplectic pairing of two absolute coefficient vectors of a genus `g` surface.
pub fn symplectic_pairing(g: usize, u: &[i64], v: &[i64]) -> i64 {
    (0..g)
        .map(|i| u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i])
        .sum()
}

fn overflow(name: &str) -> Error {
    Error::Overflow(format!("winding number of `{name}`"))
}

/// `a * b * c`, failing instead of wrapping.
fn product(a: i64, b: i64, c: i64) -> Result<i64> {
    a.checked_mul(b)
        .and_then(|ab| ab.checked_mul(c))
        .ok_or_else(|| Error::Overflow(format!("twist shift {a} * {b} * {c}")))
}

/// `T^m . action` where `T(v) = v + <v, a> a`.
fn compose_transvection(action: &[Vec<i64>], a: &HomologyClass, m: i64) -> Result<Vec<Vec<i64>>> {
    let g = a.genus();
    let ac = a.coeffs();
    let rank = action.len();
    let mut out = action.to_vec();
    for j in 0..rank {
        let pairing = wide_dot((0..g).flat_map(|i| {
            [
                (i128::from(action[2 * i][j]), ac[2 * i + 1]),
                (-i128::from(action[2 * i + 1][j]), ac[2 * i]),
            ]
        }))?;
        let k = i128::from(m) * i128::from(narrow(pairing, "action pairing")?);
        if k != 0 {
            for i in 0..rank {
                let entry = k
                    .checked_mul(i128::from(ac[i]))
                    .and_then(|v| v.checked_add(i128::from(out[i][j])))
                    .unwrap_or(i128::MAX);
                out[i][j] = narrow(entry, "action matrix entry")?;
            }
        }
    }
    Ok(out)
}

/// Checks `<M u, M v> = <u, v>` on all pairs of basis vectors.
pub fn preserves_intersection_form(g: usize, action: &[Vec<i64>]) -> bool {
    let rank = action.len();
    let column = |j: usize| -> Vec<i64> { (0..rank).map(|i| action[i][j]).collect() };
    let unit = |j: usize| -> Vec<i64> { (0..rank).map(|i| i64::from(i == j)).collect() };
    (0..rank).all(|i| {
        (0..rank).all(|j| {
            symplectic_pairing(g, &column(i), &column(j))
                == symplectic_pairing(g, &unit(i), &unit(j))
        })
    })
}
