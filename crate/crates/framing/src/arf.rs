//! Arf invariants of framings, their additivity, and orbit equivalence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::FramedSurface;
use crate::twist_engine::{x_name, y_name, EngineState, OrbitOptions};

/// Arf invariant of a framing, evaluated on its stored basis:
/// `sum (x_i + 1)(y_i + 1) + sum (a_j + 1/2)(D_j + 1) mod 2`.
pub fn arf(f: &FramedSurface) -> u8 {
    // Only parities matter; reducing first keeps the products small.
    let odd = |v: i64| v.rem_euclid(2) as u8;
    let mut total = 0u8;
    for i in 1..=f.genus() {
        total ^= (1 ^ odd(f.x(i))) & (1 ^ odd(f.y(i)));
    }
    for j in 2..=f.boundaries() {
        // a + 1/2 is an integer; its parity is that of (2a + 1) / 2.
        let shifted = odd(f.arc(j).doubled().div_euclid(2) + 1);
        total ^= shifted & (1 ^ odd(f.signature()[j - 1]));
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArfOneOptions {
    pub depth: usize,
    pub curve_arc_sums: bool,
}

impl Default for ArfOneOptions {
    fn default() -> Self {
        ArfOneOptions {
            depth: OrbitOptions::default().depth,
            curve_arc_sums: true,
        }
    }
}

/// Generator of the ideal of winding numbers of nonseparating curves on a
/// framed surface of genus 1 with one boundary component.
///
/// Computed from twist orbits of the basis curves; see [`arf1_with`].
pub fn arf1(f: &FramedSurface) -> Result<u64> {
    arf1_with(f, ArfOneOptions::default())
}

/// [`arf1`] with an explicit search depth and curve-arc sum switch.
pub fn arf1_with(f: &FramedSurface, options: ArfOneOptions) -> Result<u64> {
    let s = f.surface();
    if s.genus != 1 || s.boundaries != 1 {
        return Err(Error::OutOfClassifiedRange(format!(
            "Arf_1 is defined for genus 1 with one boundary, got ({}, {})",
            s.genus, s.boundaries
        )));
    }
    let state = EngineState::new(f.clone());
    let (x, y) = (x_name(1), y_name(1));
    let gens = [x.as_str(), y.as_str()];
    let opts = OrbitOptions {
        depth: options.depth,
        curve_arc_sums: options.curve_arc_sums,
        stop_when_stable: true,
    };
    let mut total = 0u64;
    for c in gens {
        let report = state.orbit_wn_values(c, &gens, opts)?;
        if !report.stabilized {
            return Err(Error::Unstabilized {
                depth: report.depth_reached,
                history: report.gcd_by_depth,
            });
        }
        total = num_integer::gcd(total, report.gcd);
    }
    Ok(total)
}

/// `Arf(whole) - Arf(side1) - Arf(side2) - sum (wn(c_i) + 1) mod 2` for a
/// splitting of `whole` along a multicurve with winding numbers
/// `multicurve_wns`. This is zero for every genuine splitting.
///
/// Consistency check: the boundary values of the two sides must be those of
/// `whole` together with each `wn(c_i)` and its negative (the two sides see
/// `c_i` with opposite orientations).
pub fn arf_additive_split(
    whole: &FramedSurface,
    side1: &FramedSurface,
    side2: Option<&FramedSurface>,
    multicurve_wns: &[i64],
) -> Result<u8> {
    let mut found: Vec<i64> = side1.signature().to_vec();
    if let Some(s2) = side2 {
        found.extend_from_slice(s2.signature());
    }
    let mut expected: Vec<i64> = whole.signature().to_vec();
    for &w in multicurve_wns {
        expected.push(w);
        expected.push(-w);
    }
    found.sort_unstable();
    expected.sort_unstable();
    if found != expected {
        return Err(Error::SignatureMismatch(format!(
            "sides carry boundary values {found:?}, expected {expected:?}"
        )));
    }
    let chi_sides = side1.surface().euler_characteristic()
        + side2.map_or(0, |s| s.surface().euler_characteristic());
    if chi_sides != whole.surface().euler_characteristic() {
        return Err(Error::SignatureMismatch(format!(
            "sides have Euler characteristic {chi_sides}, whole has {}",
            whole.surface().euler_characteristic()
        )));
    }
    let mut total = i64::from(arf(whole)) - i64::from(arf(side1));
    if let Some(s2) = side2 {
        total -= i64::from(arf(s2));
    }
    total -= multicurve_wns.iter().map(|w| w + 1).sum::<i64>();
    Ok(total.rem_euclid(2) as u8)
}

/// Orbit equivalence of two framings with the same boundary values.
pub fn are_equivalent(f1: &FramedSurface, f2: &FramedSurface) -> Result<bool> {
    if f1.surface() != f2.surface() {
        return Err(Error::SignatureMismatch(
            "framings live on different surfaces".into(),
        ));
    }
    if f1.signature() != f2.signature() {
        return Err(Error::SignatureMismatch(format!(
            "boundary values differ: {:?} vs {:?}",
            f1.signature(),
            f2.signature()
        )));
    }
    let s = f1.surface();
    match (s.genus, s.boundaries) {
        (g, _) if g >= 2 => Ok(arf(f1) == arf(f2)),
        (1, 1) => Ok(arf1(f1)? == arf1(f2)?),
        (g, n) => Err(Error::OutOfClassifiedRange(format!(
            "orbits of framings on genus {g} with {n} boundary components are not classified here"
        ))),
    }
}

/// Arf label of the subsurface cut off by a separating curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ArfSide {
    Zero,
    One,
    /// Genus 1 with vanishing `Arf_1`; counts as 1 in arithmetic.
    OnePlus,
}

impl ArfSide {
    pub fn value(self) -> u8 {
        match self {
            ArfSide::Zero => 0,
            ArfSide::One | ArfSide::OnePlus => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SeparatingCurveType {
    genus_side: u32,
    arf_side: ArfSide,
}

impl SeparatingCurveType {
    pub fn new(genus_side: u32, arf_side: ArfSide) -> Result<Self> {
        if genus_side == 0 {
            return Err(Error::TypeViolation(
                "separating curves cut off positive genus".into(),
            ));
        }
        if arf_side == ArfSide::OnePlus && genus_side != 1 {
            return Err(Error::TypeViolation(
                "the 1+ label only exists in genus 1".into(),
            ));
        }
        Ok(SeparatingCurveType {
            genus_side,
            arf_side,
        })
    }

    pub fn genus_side(&self) -> u32 {
        self.genus_side
    }

    pub fn arf_side(&self) -> ArfSide {
        self.arf_side
    }
}

/// Whether the twist about a separating curve of type `t` lies in the
/// subgroup generated by admissible twists.
///
/// Listed families: `(1+4k, 1)` for `k >= 1`, `(2+4k, 1)`, `(3+4k, 0)`,
/// `(4k, 0)` for `k >= 1`, `(1, 1+)` and `(3, 1)`. From ambient genus 5 on every
/// separating twist qualifies.
pub fn septwist_type_in_admissible(t: SeparatingCurveType, ambient_g: u32) -> bool {
    if ambient_g >= 5 {
        return true;
    }
    let h = t.genus_side;
    match t.arf_side {
        ArfSide::OnePlus => h == 1,
        ArfSide::One => (h % 4 == 1 && h >= 5) || h % 4 == 2 || h == 3,
        ArfSide::Zero => h % 4 == 3 || (h.is_multiple_of(4) && h >= 4),
    }
}
