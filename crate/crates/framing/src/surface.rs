//! Surface types, homology with the intersection pairing, and framings stored
//! as winding numbers on a distinguished geometric basis.
//!
//! Basis conventions. For a surface of genus `g` with `n` boundary components
//! the coefficient vectors have length `2g + n - 1`:
//!
//! * absolute classes use `(x_1, y_1, ..., x_g, y_g, D_2, ..., D_n)` where `D_j`
//!   is the class of the `j`-th boundary curve; `D_1 = -(D_2 + ... + D_n)`.
//! * relative classes use `(x_1, y_1, ..., x_g, y_g, a_2, ..., a_n)` where the
//!   basis arc `a_j` runs from boundary 1 to boundary `j`. An arc from `p` to
//!   `q` has class `a_q - a_p` (with `a_1 = 0`).
//!
//! The pairing of an arc with a boundary curve counts signed endpoints: an arc
//! ending on `D_j` pairs to `+1` with it, an arc starting there to `-1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A number in `(1/2)Z`, stored as its doubled value so no rounding is involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    /// `k + 1/2`
    pub const fn half_plus(k: i64) -> Self {
        HalfInt(2 * k + 1)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    /// True for values in `Z + 1/2`.
    pub const fn is_strict_half(self) -> bool {
        self.0.rem_euclid(2) == 1
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    pub fn checked_add(self, rhs: HalfInt) -> Option<HalfInt> {
        self.0.checked_add(rhs.0).map(HalfInt)
    }

    /// `self - k` for an integer `k`.
    pub fn checked_sub_int(self, k: i64) -> Option<HalfInt> {
        k.checked_mul(2)
            .and_then(|d| self.0.checked_sub(d))
            .map(HalfInt)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"k"` or `"p/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .ok()
                .and_then(|v| v.checked_mul(2))
                .map(HalfInt)
                .ok_or_else(bad),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => num.checked_mul(2).map(HalfInt).ok_or_else(bad),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A zero-order partition of `2g - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionKappa {
    parts: Vec<u32>,
}

impl PartitionKappa {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::BadPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::BadPartition("zero orders must be positive".into()));
        }
        let total: u64 = parts.iter().map(|&k| u64::from(k)).sum();
        if !total.is_multiple_of(2) {
            return Err(Error::BadPartition(format!("sum {total} is odd")));
        }
        if total > 2 * MAX_TOPOLOGY as u64 {
            return Err(Error::BadPartition(format!(
                "sum {total} exceeds the supported genus {MAX_TOPOLOGY}"
            )));
        }
        Ok(PartitionKappa { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn genus(&self) -> usize {
        (self.parts.iter().map(|&k| k as usize).sum::<usize>() + 2) / 2
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn gcd(&self) -> u32 {
        self.parts
            .iter()
            .fold(0, |acc, &k| num_integer::gcd(acc, k))
    }

    /// Prong counts `k_i = kappa_i + 1`.
    pub fn prong_orders(&self) -> Vec<u32> {
        self.parts.iter().map(|&k| k + 1).collect()
    }

    /// Boundary winding numbers of the real oriented blow-up, `-1 - kappa_i`.
    pub fn blowup_signature(&self) -> Vec<i64> {
        self.parts.iter().map(|&k| -1 - i64::from(k)).collect()
    }

    /// All partitions of `2g - 2` with non-increasing parts, in reverse
    /// lexicographic order (`[2g-2]` first, `[1, ..., 1]` last).
    pub fn all_for_genus(g: usize) -> Vec<PartitionKappa> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        if g < 2 {
            return Vec::new();
        }
        let total = (2 * g - 2) as u32;
        let mut out = Vec::new();
        rec(total, total, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|parts| PartitionKappa { parts })
            .collect()
    }
}

impl fmt::Display for PartitionKappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for PartitionKappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad zero order {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionKappa::new(parts)
    }
}

/// Genus and number of boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceType {
    pub genus: usize,
    pub boundaries: usize,
}

impl SurfaceType {
    pub const fn new(genus: usize, boundaries: usize) -> Self {
        SurfaceType { genus, boundaries }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundaries as i64
    }

    /// Length of coefficient vectors, `2g + n - 1` (or `2g` when closed).
    pub fn rank(&self) -> usize {
        2 * self.genus + self.boundaries.saturating_sub(1)
    }

    fn unit(&self, idx: usize, kind: ClassKind) -> HomologyClass {
        let mut coeffs = vec![0; self.rank()];
        coeffs[idx] = 1;
        HomologyClass {
            genus: self.genus,
            coeffs,
            kind,
        }
    }

    /// The absolute class `x_i`, 1-based.
    pub fn x(&self, i: usize) -> HomologyClass {
        assert!(i >= 1 && i <= self.genus, "x index out of range");
        self.unit(2 * (i - 1), ClassKind::Absolute)
    }

    /// The absolute class `y_i`, 1-based.
    pub fn y(&self, i: usize) -> HomologyClass {
        assert!(i >= 1 && i <= self.genus, "y index out of range");
        self.unit(2 * (i - 1) + 1, ClassKind::Absolute)
    }

    /// The class of the boundary curve `D_j`, 1-based.
    pub fn boundary_class(&self, j: usize) -> HomologyClass {
        assert!(
            j >= 1 && j <= self.boundaries,
            "boundary index out of range"
        );
        if j == 1 {
            let mut coeffs = vec![0; self.rank()];
            for c in coeffs.iter_mut().skip(2 * self.genus) {
                *c = -1;
            }
            HomologyClass {
                genus: self.genus,
                coeffs,
                kind: ClassKind::Absolute,
            }
        } else {
            self.unit(2 * self.genus + j - 2, ClassKind::Absolute)
        }
    }

    /// The relative class of an arc from boundary `p` to boundary `q`.
    pub fn arc(&self, p: usize, q: usize) -> HomologyClass {
        assert!(p != q, "arc endpoints must differ");
        assert!(p >= 1 && q >= 1 && p <= self.boundaries && q <= self.boundaries);
        let mut coeffs = vec![0; self.rank()];
        if q > 1 {
            coeffs[2 * self.genus + q - 2] += 1;
        }
        if p > 1 {
            coeffs[2 * self.genus + p - 2] -= 1;
        }
        HomologyClass {
            genus: self.genus,
            coeffs,
            kind: ClassKind::Relative { from: p, to: q },
        }
    }

    pub fn zero_class(&self) -> HomologyClass {
        HomologyClass {
            genus: self.genus,
            coeffs: vec![0; self.rank()],
            kind: ClassKind::Absolute,
        }
    }

    /// An absolute class from raw coefficients.
    pub fn absolute(&self, coeffs: Vec<i64>) -> Result<HomologyClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::LengthMismatch {
                what: "homology coefficients",
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        Ok(HomologyClass {
            genus: self.genus,
            coeffs,
            kind: ClassKind::Absolute,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    Absolute,
    /// Arc class with ordered endpoint boundary labels.
    Relative {
        from: usize,
        to: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    genus: usize,
    coeffs: Vec<i64>,
    kind: ClassKind,
}

impl HomologyClass {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_absolute(&self) -> bool {
        self.kind == ClassKind::Absolute
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Symplectic block `(x_1, y_1, ..., x_g, y_g)`.
    pub fn symplectic_part(&self) -> &[i64] {
        &self.coeffs[..2 * self.genus]
    }

    /// Boundary (or arc) block.
    pub fn boundary_part(&self) -> &[i64] {
        &self.coeffs[2 * self.genus..]
    }

    /// Sum of two classes. The result keeps the kind of `self`; adding a
    /// relative class to anything is rejected.
    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass> {
        self.check_same_shape(other)?;
        if !other.is_absolute() {
            return Err(Error::KindMismatch(
                "only absolute classes can be added".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomologyClass {
            genus: self.genus,
            coeffs,
            kind: self.kind,
        })
    }

    /// Integer multiple; the kind is kept.
    pub fn scale(&self, k: i64) -> HomologyClass {
        HomologyClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            kind: self.kind,
        }
    }

    /// Drops boundary components: the image in the closed-up surface.
    pub fn capped(&self) -> Vec<i64> {
        self.symplectic_part().to_vec()
    }

    fn check_same_shape(&self, other: &HomologyClass) -> Result<()> {
        if self.genus != other.genus || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::KindMismatch(format!(
                "classes live on different surfaces ({} vs {} coefficients)",
                self.coeffs.len(),
                other.coeffs.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let bname = if self.is_absolute() { "D" } else { "a" };
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if idx < 2 * self.genus {
                let letter = if idx % 2 == 0 { "x" } else { "y" };
                format!("{letter}{}", idx / 2 + 1)
            } else {
                format!("{bname}{}", idx - 2 * self.genus + 2)
            };
            terms.push(match c {
                1 => name,
                -1 => format!("-{name}"),
                _ => format!("{c}{name}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// The pairing `<a, b>` of a class (absolute or relative) with an absolute class.
pub fn intersection(a: &HomologyClass, b: &HomologyClass) -> Result<i64> {
    if !b.is_absolute() {
        return Err(Error::KindMismatch(
            "second argument of the pairing must be absolute".into(),
        ));
    }
    a.check_same_shape(b)?;
    let (sa, sb) = (a.symplectic_part(), b.symplectic_part());
    let mut terms: Vec<(i128, i64)> = Vec::with_capacity(a.coeffs.len());
    for i in 0..a.genus {
        terms.push((sa[2 * i].into(), sb[2 * i + 1]));
        terms.push((-i128::from(sa[2 * i + 1]), sb[2 * i]));
    }
    if !a.is_absolute() {
        terms.extend(
            a.boundary_part()
                .iter()
                .map(|&p| i128::from(p))
                .zip(b.boundary_part().iter().copied()),
        );
    }
    narrow(wide_dot(terms)?, "intersection number")
}

/// `sum p * q` in 128 bits, failing instead of wrapping. `p` may be a
/// negated 64-bit value.
pub(crate) fn wide_dot(terms: impl IntoIterator<Item = (i128, i64)>) -> Result<i128> {
    terms.into_iter().try_fold(0i128, |acc, (p, q)| {
        acc.checked_add(p * i128::from(q))
            .ok_or_else(|| Error::Overflow("pairing does not fit in 128 bits".into()))
    })
}

/// Converts a wide intermediate back to `i64`.
pub(crate) fn narrow(v: i128, what: &str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(format!("{what} does not fit in 64 bits")))
}

/// Largest genus or boundary count accepted from input data.
pub const MAX_TOPOLOGY: usize = 1 << 16;
/// Largest absolute winding number accepted from input data.
pub const MAX_INPUT_VALUE: i64 = 1 << 40;

fn check_input(surface: SurfaceType, values: impl IntoIterator<Item = i64>) -> Result<()> {
    if surface.genus > MAX_TOPOLOGY || surface.boundaries > MAX_TOPOLOGY {
        return Err(Error::TypeViolation(format!(
            "genus {} with {} boundary components exceeds the supported size {MAX_TOPOLOGY}",
            surface.genus, surface.boundaries
        )));
    }
    if let Some(v) = values
        .into_iter()
        .find(|v| v.unsigned_abs() > MAX_INPUT_VALUE as u64)
    {
        return Err(Error::Overflow(format!(
            "winding number {v} exceeds the input bound {MAX_INPUT_VALUE}"
        )));
    }
    Ok(())
}

/// A relative framing, recorded by its values on the distinguished geometric
/// basis `x_1, y_1, ..., x_g, y_g, a_2, ..., a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FramedSurface {
    surface: SurfaceType,
    signature: Vec<i64>,
    xy: Vec<i64>,
    arcs: Vec<HalfInt>,
}

impl FramedSurface {
    pub fn new(
        surface: SurfaceType,
        signature: Vec<i64>,
        xy: Vec<i64>,
        arcs: Vec<HalfInt>,
    ) -> Result<Self> {
        if surface.boundaries == 0 {
            return Err(Error::TypeViolation(
                "relative framings need at least one boundary component".into(),
            ));
        }
        check_input(surface, [])?;
        check_len("signature", surface.boundaries, signature.len())?;
        check_len("curve values", 2 * surface.genus, xy.len())?;
        check_len("arc values", surface.boundaries - 1, arcs.len())?;
        check_input(
            surface,
            signature
                .iter()
                .chain(&xy)
                .copied()
                .chain(arcs.iter().map(|a| a.doubled() / 2)),
        )?;
        if let Some(bad) = arcs.iter().find(|a| !a.is_strict_half()) {
            return Err(Error::TypeViolation(format!(
                "arc value {bad} is not in Z + 1/2"
            )));
        }
        check_coherence(surface, &signature)?;
        Ok(FramedSurface {
            surface,
            signature,
            xy,
            arcs,
        })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn genus(&self) -> usize {
        self.surface.genus
    }

    pub fn boundaries(&self) -> usize {
        self.surface.boundaries
    }

    pub fn signature(&self) -> &[i64] {
        &self.signature
    }

    pub fn xy(&self) -> &[i64] {
        &self.xy
    }

    pub fn arcs(&self) -> &[HalfInt] {
        &self.arcs
    }

    pub fn x(&self, i: usize) -> i64 {
        self.xy[2 * (i - 1)]
    }

    pub fn y(&self, i: usize) -> i64 {
        self.xy[2 * (i - 1) + 1]
    }

    /// Winding number of the basis arc `a_j`, `j >= 2`.
    pub fn arc(&self, j: usize) -> HalfInt {
        self.arcs[j - 2]
    }

    /// All boundary values are at most `-1`.
    pub fn is_holomorphic(&self) -> bool {
        self.signature.iter().all(|&s| s <= -1)
    }

    /// Parity `phi(c) + 1 mod 2` of any simple closed curve in the class `v`.
    ///
    /// This is a quadratic refinement of the mod 2 intersection form, so it is
    /// determined by the basis values.
    pub fn parity(&self, v: &HomologyClass) -> Result<u8> {
        if !v.is_absolute() || v.coeffs().len() != self.surface.rank() {
            return Err(Error::KindMismatch(
                "parity is defined on absolute classes of this surface".into(),
            ));
        }
        let s = v.symplectic_part();
        let mut q = 0i64;
        for i in 0..self.genus() {
            let (a, b) = (s[2 * i], s[2 * i + 1]);
            q += a * b + a * (self.xy[2 * i] + 1) + b * (self.xy[2 * i + 1] + 1);
        }
        for (j, &c) in v.boundary_part().iter().enumerate() {
            q += c * (self.signature[j + 1] + 1);
        }
        Ok(q.rem_euclid(2) as u8)
    }

    /// Forgets the arc values.
    pub fn to_absolute(&self) -> AbsoluteFraming {
        AbsoluteFraming {
            surface: self.surface,
            signature: self.signature.clone(),
            xy: self.xy.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FramedSurfaceJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: FramedSurfaceJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

fn check_len(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch {
            what,
            expected,
            got,
        });
    }
    Ok(())
}

fn check_coherence(surface: SurfaceType, signature: &[i64]) -> Result<()> {
    let sum: i64 = signature.iter().sum();
    let expected = surface.euler_characteristic();
    if sum != expected {
        return Err(Error::CoherenceViolation { sum, expected });
    }
    Ok(())
}

/// A framing of a surface with marked points: only closed-curve values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbsoluteFraming {
    surface: SurfaceType,
    signature: Vec<i64>,
    xy: Vec<i64>,
}

impl AbsoluteFraming {
    pub fn new(surface: SurfaceType, signature: Vec<i64>, xy: Vec<i64>) -> Result<Self> {
        check_input(surface, [])?;
        check_len("signature", surface.boundaries, signature.len())?;
        check_len("curve values", 2 * surface.genus, xy.len())?;
        check_input(surface, signature.iter().chain(&xy).copied())?;
        check_coherence(surface, &signature)?;
        Ok(AbsoluteFraming {
            surface,
            signature,
            xy,
        })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn signature(&self) -> &[i64] {
        &self.signature
    }

    pub fn xy(&self) -> &[i64] {
        &self.xy
    }
}

/// On-disk form of a framed surface.
///
/// Arc values are strings `"k"` or `"p/2"`; a bare JSON integer in `arcs` is
/// read as the doubled value, so `-1` means `-1/2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FramedSurfaceJson {
    pub genus: usize,
    pub boundary: Vec<BoundaryJson>,
    pub basis: BasisJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryJson {
    pub label: usize,
    pub wn: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisJson {
    pub xy: Vec<i64>,
    #[serde(default)]
    pub arcs: Vec<ArcValueJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArcValueJson {
    Doubled(i64),
    Text(String),
}

impl From<&FramedSurface> for FramedSurfaceJson {
    fn from(f: &FramedSurface) -> Self {
        FramedSurfaceJson {
            genus: f.genus(),
            boundary: f
                .signature
                .iter()
                .enumerate()
                .map(|(i, &wn)| BoundaryJson { label: i + 1, wn })
                .collect(),
            basis: BasisJson {
                xy: f.xy.clone(),
                arcs: f
                    .arcs
                    .iter()
                    .map(|a| ArcValueJson::Text(a.to_string()))
                    .collect(),
            },
        }
    }
}

impl TryFrom<FramedSurfaceJson> for FramedSurface {
    type Error = Error;

    fn try_from(raw: FramedSurfaceJson) -> Result<Self> {
        let mut boundary = raw.boundary;
        boundary.sort_by_key(|b| b.label);
        for (i, b) in boundary.iter().enumerate() {
            if b.label != i + 1 {
                return Err(Error::Parse(format!(
                    "boundary labels must be 1..n, found {}",
                    b.label
                )));
            }
        }
        let arcs = raw
            .basis
            .arcs
            .into_iter()
            .map(|a| match a {
                ArcValueJson::Doubled(d) => Ok(HalfInt::from_doubled(d)),
                ArcValueJson::Text(s) => s.parse(),
            })
            .collect::<Result<Vec<_>>>()?;
        FramedSurface::new(
            SurfaceType::new(raw.genus, boundary.len()),
            boundary.iter().map(|b| b.wn).collect(),
            raw.basis.xy,
            arcs,
        )
    }
}
