//! Components of strata of abelian differentials and of their labeled and
//! prong-marked covers, and arithmetic in the prong rotation group.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::configurations::build_genset;
use crate::error::{Error, Result};
use crate::surface::PartitionKappa;

/// `PR = Z/k_1 x ... x Z/k_n`, elements as coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProngGroup {
    orders: Vec<u32>,
}

/// Largest group order for which elements are enumerated.
pub const MAX_ENUMERATION: u64 = 1 << 26;

impl ProngGroup {
    /// Fails when an order is zero or the group order does not fit in `u64`.
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::TypeViolation("prong orders must be positive".into()));
        }
        orders
            .iter()
            .try_fold(1u64, |acc, &k| acc.checked_mul(u64::from(k)))
            .ok_or_else(|| Error::Overflow(format!("prong group of {} factors", orders.len())))?;
        Ok(ProngGroup { orders })
    }

    pub fn for_kappa(kappa: &PartitionKappa) -> Result<Self> {
        Self::new(kappa.prong_orders())
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&k| u64::from(k)).product()
    }

    fn require_enumerable(&self) -> Result<usize> {
        let order = self.order();
        if order > MAX_ENUMERATION {
            return Err(Error::Unsupported(format!(
                "enumerating a group of order {order} (limit {MAX_ENUMERATION})"
            )));
        }
        Ok(order as usize)
    }

    fn encode(&self, v: &[u32]) -> usize {
        v.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &k)| acc * k as usize + (c % k) as usize)
    }

    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &k) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % k as usize) as u32;
            idx /= k as usize;
        }
        out
    }

    fn add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        u.iter()
            .zip(v)
            .zip(&self.orders)
            .map(|((&a, &b), &k)| (a + b) % k)
            .collect()
    }

    /// The diagonal element `(1, ..., 1)`.
    pub fn diagonal(&self) -> Vec<u32> {
        self.orders.iter().map(|&k| 1 % k).collect()
    }

    /// Elements in the subgroup generated by `gens`, by breadth-first closure.
    pub fn closure(&self, gens: &[Vec<u32>]) -> Result<BTreeSet<Vec<u32>>> {
        let size = self.require_enumerable()?;
        let mut seen = vec![false; size];
        let zero = vec![0; self.orders.len()];
        seen[self.encode(&zero)] = true;
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                let e = self.encode(&y);
                if !seen[e] {
                    seen[e] = true;
                    stack.push(y);
                }
            }
        }
        Ok((0..size)
            .filter(|&i| seen[i])
            .map(|i| self.decode(i))
            .collect())
    }

    /// All elements, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.order() as usize).map(|i| self.decode(i))
    }
}

/// Which of the three generator families an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorFamily {
    /// `e_i` for odd `k_i`.
    OddUnit,
    /// `2 e_i` for even `k_i`.
    EvenDouble,
    /// `m (e_i + e_j)` for even `k_i, k_j` and odd `m`.
    EvenPair,
}

/// The parity-kernel subgroup `PR'`: vectors whose coefficients over even
/// `k_i` sum to an even number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrPrime {
    group: ProngGroup,
}

pub fn pr_prime(pg: &ProngGroup) -> PrPrime {
    PrPrime { group: pg.clone() }
}

impl PrPrime {
    pub fn group(&self) -> &ProngGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        let full = self.group.order();
        if self.group.orders.iter().any(|k| k % 2 == 0) {
            full / 2
        } else {
            full
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.group.orders.len()
            && v.iter()
                .zip(&self.group.orders)
                .filter(|(_, &k)| k % 2 == 0)
                .map(|(&c, &k)| c % k)
                .sum::<u32>()
                % 2
                == 0
    }

    /// Generators from the three families; `m` in the pair family runs over
    /// odd residues below `lcm(k_i, k_j)`.
    pub fn generators(&self) -> Vec<(GeneratorFamily, Vec<u32>)> {
        let ks = &self.group.orders;
        let n = ks.len();
        let unit = |i: usize, c: u32| -> Vec<u32> {
            (0..n).map(|j| if j == i { c % ks[j] } else { 0 }).collect()
        };
        let mut out = Vec::new();
        for (i, &k) in ks.iter().enumerate() {
            if k % 2 == 1 {
                out.push((GeneratorFamily::OddUnit, unit(i, 1)));
            } else {
                out.push((GeneratorFamily::EvenDouble, unit(i, 2)));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if ks[i] % 2 == 1 || ks[j] % 2 == 1 {
                    continue;
                }
                let l = num_integer::lcm(ks[i], ks[j]);
                for m in (1..l).step_by(2) {
                    let mut v = vec![0; n];
                    v[i] = m % ks[i];
                    v[j] = m % ks[j];
                    out.push((GeneratorFamily::EvenPair, v));
                }
            }
        }
        out
    }

    /// Brute-force index `[PR : PR']`.
    pub fn index_by_enumeration(&self) -> Result<u64> {
        self.group.require_enumerable()?;
        let inside = self.group.elements().filter(|v| self.contains(v)).count() as u64;
        Ok(self.group.order() / inside)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub pr_prime_order: u64,
    /// Order of `(1, ..., 1)`.
    pub diagonal_order: u64,
    /// Number of cosets of `<(1, ..., 1)>` in `PR'`, found by enumeration.
    pub order: u64,
    pub trivial: bool,
}

/// `PR' / <(1, ..., 1)>` by coset enumeration.
pub fn quotient_pr_prime(pg: &ProngGroup) -> Result<QuotientReport> {
    let sub = pr_prime(pg);
    let diag = pg.diagonal();
    let size = pg.require_enumerable()?;
    let mut marked = vec![false; size];
    let mut cosets = 0u64;
    let mut diagonal_order = 1u64;
    for x in pg.elements() {
        if !sub.contains(&x) || marked[pg.encode(&x)] {
            continue;
        }
        cosets += 1;
        let mut y = x.clone();
        let mut steps = 0u64;
        loop {
            marked[pg.encode(&y)] = true;
            steps += 1;
            y = pg.add(&y, &diag);
            if y == x {
                break;
            }
        }
        diagonal_order = steps;
    }
    Ok(QuotientReport {
        pr_prime_order: sub.order(),
        diagonal_order,
        order: cosets,
        trivial: cosets == 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Hyperelliptic,
    /// Spin component with Arf invariant 0.
    Even,
    /// Spin component with Arf invariant 1.
    Odd,
    /// The unique nonhyperelliptic component when `gcd(kappa)` is odd.
    NonhypUnique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDescriptor {
    pub kind: ComponentKind,
    pub arf: Option<u8>,
    /// Components of the labeled cover above this one.
    pub labeled_multiplicity: Option<u32>,
    /// Components of the prong-marked cover above each labeled component.
    pub prong_multiplicity: Option<u32>,
}

impl ComponentDescriptor {
    pub fn is_hyperelliptic(&self) -> bool {
        self.kind == ComponentKind::Hyperelliptic
    }
}

fn require_genus(kappa: &PartitionKappa, min: usize) -> Result<usize> {
    let g = kappa.genus();
    if g < min {
        return Err(Error::OutOfClassifiedRange(format!(
            "kappa {kappa} has genus {g}; classification is used from genus {min} on"
        )));
    }
    Ok(g)
}

/// Connected components of the stratum, hyperelliptic first, then by Arf.
pub fn components(kappa: &PartitionKappa) -> Result<Vec<ComponentDescriptor>> {
    let g = require_genus(kappa, 4)?;
    let parts = kappa.parts();
    let hyp = parts == [2 * g as u32 - 2] || parts == [g as u32 - 1, g as u32 - 1];
    let prong = if kappa.gcd().is_multiple_of(2) { 1 } else { 2 };
    let mut out = Vec::new();
    if hyp {
        out.push(ComponentDescriptor {
            kind: ComponentKind::Hyperelliptic,
            arf: None,
            labeled_multiplicity: None,
            prong_multiplicity: None,
        });
    }
    let nonhyp = |kind, arf| ComponentDescriptor {
        kind,
        arf,
        labeled_multiplicity: Some(1),
        prong_multiplicity: Some(prong),
    };
    if kappa.gcd().is_multiple_of(2) {
        out.push(nonhyp(ComponentKind::Even, Some(0)));
        out.push(nonhyp(ComponentKind::Odd, Some(1)));
    } else {
        out.push(nonhyp(ComponentKind::NonhypUnique, None));
    }
    Ok(out)
}

/// Components of the prong-marked cover above a nonhyperelliptic component.
pub fn boissy_components(kappa: &PartitionKappa, base: &ComponentDescriptor) -> Result<u32> {
    require_genus(kappa, 3)?;
    if base.is_hyperelliptic() {
        return Err(Error::Unsupported(
            "prong-marked covers of hyperelliptic components".into(),
        ));
    }
    Ok(if kappa.gcd().is_multiple_of(2) { 1 } else { 2 })
}

/// The arithmetic surjectivity criterion: with `eta` the even parts and
/// `upsilon` the odd parts, at most two odd parts and the numbers
/// `eta_i + 1`, `(upsilon_j + 1) / 2` pairwise coprime.
pub fn framed_to_absolute_surjective(kappa: &PartitionKappa) -> bool {
    let odd: Vec<u32> = kappa
        .parts()
        .iter()
        .copied()
        .filter(|k| k % 2 == 1)
        .collect();
    if odd.len() > 2 {
        return false;
    }
    let numbers: Vec<u32> = kappa
        .parts()
        .iter()
        .map(|&k| if k % 2 == 0 { k + 1 } else { k.div_ceil(2) })
        .collect();
    (0..numbers.len())
        .all(|i| (i + 1..numbers.len()).all(|j| num_integer::gcd(numbers[i], numbers[j]) == 1))
}

/// True when cylinder shears cannot generate the labeled monodromy image.
pub fn shear_generation_obstruction(kappa: &PartitionKappa) -> Result<bool> {
    require_genus(kappa, 5)?;
    Ok(!framed_to_absolute_surjective(kappa))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverRow {
    pub kind: ComponentKind,
    pub arf: Option<u8>,
    pub plain: u32,
    pub labeled: u32,
    pub prong: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverTable {
    /// Order of the group permuting equal zero orders.
    pub sym_order: u64,
    pub rows: Vec<CoverRow>,
}

/// Component counts along the tower plain -> labeled -> prong-marked, for each
/// nonhyperelliptic component.
pub fn cover_component_counts(kappa: &PartitionKappa) -> Result<CoverTable> {
    let comps = components(kappa)?;
    let mut sym_order = 1u64;
    let mut parts = kappa.parts().to_vec();
    parts.sort_unstable();
    for run in parts.chunk_by(|a, b| a == b) {
        for f in 1..=run.len() as u64 {
            sym_order = sym_order
                .checked_mul(f)
                .ok_or_else(|| Error::Overflow("order of the symmetry group of kappa".into()))?;
        }
    }
    let mut rows = Vec::new();
    for c in comps.iter().filter(|c| !c.is_hyperelliptic()) {
        let labeled = c.labeled_multiplicity.unwrap_or(1);
        let prong = boissy_components(kappa, c)?;
        rows.push(CoverRow {
            kind: c.kind,
            arf: c.arf,
            plain: 1,
            labeled,
            prong: labeled * prong,
        });
    }
    Ok(CoverTable { sym_order, rows })
}

/// Arf invariant realized by the prototype curve system of the given type.
/// `None` when `gcd(kappa)` is odd (there is no spin label).
pub fn prototype_arf(kappa: &PartitionKappa, kind: u8) -> Option<u8> {
    if kappa.gcd() % 2 == 1 {
        return None;
    }
    let g = kappa.genus();
    let type_one = if g.is_multiple_of(4) || g % 4 == 3 {
        1
    } else {
        0
    };
    match kind {
        1 => Some(type_one),
        2 => Some(1 - type_one),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxiliaryCurve {
    /// Boundary (zero) index, 1-based.
    pub zero: usize,
    pub boundary_wn: i64,
    /// Allowed values from the definition: `+-1` if `phi(D)` is odd, `+-2` if even.
    pub allowed_by_definition: Vec<i64>,
    /// Value forced when the curve cobounds genus `(k-1)/2` or `(k-2)/2`.
    pub wn_from_genus: i64,
    pub cobounded_genus: u32,
    /// Both constraints agree.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxiliaryPair {
    pub zeros: (usize, usize),
    /// The winding number of such a curve is odd.
    pub wn_parity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsoluteGeneratingDescriptor {
    pub kappa: Vec<u32>,
    pub prototype_types: Vec<u8>,
    pub curves: Vec<String>,
    pub single: Vec<AuxiliaryCurve>,
    pub pairs: Vec<AuxiliaryPair>,
    pub warnings: Vec<String>,
}

/// Prototype curves plus the auxiliary curve system for the blow-up of `kappa`.
pub fn absolute_generating_descriptor(
    kappa: &PartitionKappa,
) -> Result<AbsoluteGeneratingDescriptor> {
    let g = kappa.genus();
    let mut warnings = Vec::new();
    if g < 5 {
        warnings.push(format!(
            "genus {g} is below 5; the generating statement is not claimed"
        ));
    }
    let prototype_types = if kappa.gcd().is_multiple_of(2) {
        vec![1, 2]
    } else {
        vec![2]
    };
    let build = build_genset(kappa, prototype_types[0])?;
    warnings.extend(build.warnings);
    let curves = build.config.curves.iter().map(|c| c.name.clone()).collect();
    let sig = kappa.blowup_signature();
    let single = sig
        .iter()
        .enumerate()
        .map(|(i, &phi)| {
            let k = (-phi) as u32;
            let allowed = if phi % 2 != 0 {
                vec![-1, 1]
            } else {
                vec![-2, 2]
            };
            let (wn, genus) = if k % 2 == 1 {
                (-1, (k - 1) / 2)
            } else {
                (-2, (k - 2) / 2)
            };
            AuxiliaryCurve {
                zero: i + 1,
                boundary_wn: phi,
                consistent: allowed.contains(&wn),
                allowed_by_definition: allowed,
                wn_from_genus: wn,
                cobounded_genus: genus,
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..sig.len() {
        for j in i + 1..sig.len() {
            if sig[i] % 2 == 0 && sig[j] % 2 == 0 {
                pairs.push(AuxiliaryPair {
                    zeros: (i + 1, j + 1),
                    wn_parity: 1,
                });
            }
        }
    }
    Ok(AbsoluteGeneratingDescriptor {
        kappa: kappa.parts().to_vec(),
        prototype_types,
        curves,
        single,
        pairs,
        warnings,
    })
}
