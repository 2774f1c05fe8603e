//! Exact arithmetic in finite products of residue rings `Z/p^k`.
//!
//! A [`ProductRing`] is an ordered product of [`LocalRing`] components; a
//! [`RingElem`] stores one least-non-negative residue per component. On top
//! of the plain arithmetic this module provides
//!
//! - [`ShiftSet`]: a small set `S` of shift constants such that every ring
//!   element can be written `xi^2 - eta^2 + s` with `xi`, `eta` units and
//!   `s` in `S`,
//! - [`ProductRing::decompose_square_diff`]: the deterministic witness
//!   search producing such a decomposition,
//! - [`ProductRing::in_residue_set`]: the vanishing-polynomial membership
//!   test for sets of the form "every residue lies in `T`".

use smallvec::SmallVec;
use std::fmt;
use thiserror::Error;

/// Largest carrier size `p^k` accepted for a single component.
const MAX_CARRIER: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("carrier {prime}^{exponent} exceeds 2^31")]
    CarrierTooLarge { prime: u64, exponent: u32 },
    #[error("ring must have at least one component")]
    EmptyProduct,
    #[error("operands belong to rings with different layouts")]
    LayoutMismatch,
    #[error("element is not a unit at component {component}")]
    NonUnit { component: usize },
    #[error("no square-difference decomposition for {element} over {ring}")]
    NoDecomposition { element: String, ring: String },
}

/// One residue-ring component `Z/p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalRing {
    prime: u32,
    exponent: u32,
    modulus: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl LocalRing {
    pub fn new(prime: u64, exponent: u32) -> Result<Self, RingError> {
        if !is_prime(prime) {
            return Err(RingError::NotPrime(prime));
        }
        assert!(exponent >= 1, "exponent must be positive");
        let mut modulus = 1u64;
        for _ in 0..exponent {
            modulus = modulus.saturating_mul(prime);
            if modulus > MAX_CARRIER {
                return Err(RingError::CarrierTooLarge { prime, exponent });
            }
        }
        Ok(LocalRing {
            prime: prime as u32,
            exponent,
            modulus: modulus as u32,
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Carrier size `p^k`.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

/// Element of a [`ProductRing`]: one reduced residue per component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem {
    residues: SmallVec<[u32; 4]>,
}

impl RingElem {
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Ordered finite product of residue rings. The component order is fixed at
/// construction and defines the residue layout of every [`RingElem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRing {
    components: Vec<LocalRing>,
}

impl ProductRing {
    pub fn new(components: Vec<LocalRing>) -> Result<Self, RingError> {
        if components.is_empty() {
            return Err(RingError::EmptyProduct);
        }
        Ok(ProductRing { components })
    }

    /// Convenience constructor from `(prime, exponent)` pairs.
    pub fn from_primes(spec: &[(u64, u32)]) -> Result<Self, RingError> {
        let components = spec
            .iter()
            .map(|&(p, k)| LocalRing::new(p, k))
            .collect::<Result<Vec<_>, _>>()?;
        ProductRing::new(components)
    }

    pub fn components(&self) -> &[LocalRing] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Number of elements of the ring.
    pub fn size(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.modulus as u64)
            .product()
    }

    fn check_layout(&self, a: &RingElem) -> Result<(), RingError> {
        if a.residues.len() != self.components.len() {
            return Err(RingError::LayoutMismatch);
        }
        Ok(())
    }

    /// Builds an element from signed integers, reducing each one.
    pub fn elem(&self, values: &[i64]) -> RingElem {
        assert_eq!(values.len(), self.components.len(), "component count mismatch");
        let residues = values
            .iter()
            .zip(&self.components)
            .map(|(&v, c)| v.rem_euclid(c.modulus as i64) as u32)
            .collect();
        RingElem { residues }
    }

    /// The diagonal image of an integer: `n` reduced in every component.
    pub fn scalar(&self, n: i64) -> RingElem {
        let residues = self
            .components
            .iter()
            .map(|c| n.rem_euclid(c.modulus as i64) as u32)
            .collect();
        RingElem { residues }
    }

    pub fn zero(&self) -> RingElem {
        self.scalar(0)
    }

    pub fn one(&self) -> RingElem {
        self.scalar(1)
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.residues.iter().all(|&r| r == 0)
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.check_layout(a)?;
        self.check_layout(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.components)
            .map(|((&x, &y), c)| ((x as u64 + y as u64) % c.modulus as u64) as u32)
            .collect();
        Ok(RingElem { residues })
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.check_layout(a)?;
        self.check_layout(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.components)
            .map(|((&x, &y), c)| ((x as u64 * y as u64) % c.modulus as u64) as u32)
            .collect();
        Ok(RingElem { residues })
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        debug_assert_eq!(a.residues.len(), self.components.len());
        let residues = a
            .residues
            .iter()
            .zip(&self.components)
            .map(|(&x, c)| if x == 0 { 0 } else { c.modulus - x })
            .collect();
        RingElem { residues }
    }

    /// A unit has every residue coprime to its component prime.
    pub fn is_unit(&self, a: &RingElem) -> bool {
        a.residues
            .iter()
            .zip(&self.components)
            .all(|(&x, c)| x % c.prime != 0)
    }

    /// Componentwise multiplicative inverse. Fails on the first non-unit
    /// component.
    pub fn inv(&self, a: &RingElem) -> Result<RingElem, RingError> {
        self.check_layout(a)?;
        let mut residues = SmallVec::with_capacity(a.residues.len());
        for (component, (&x, c)) in a.residues.iter().zip(&self.components).enumerate() {
            if x % c.prime == 0 {
                return Err(RingError::NonUnit { component });
            }
            residues.push(mod_inverse(x, c.modulus));
        }
        Ok(RingElem { residues })
    }

    /// All ring elements in lexicographic order over residue sequences
    /// (leftmost component most significant).
    pub fn elements(&self) -> Vec<RingElem> {
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut current: SmallVec<[u32; 4]> = SmallVec::from_elem(0, self.components.len());
        loop {
            out.push(RingElem {
                residues: current.clone(),
            });
            // odometer increment, least significant digit last
            let mut i = self.components.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < self.components[i].modulus {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    /// All units, in the same lexicographic order as [`Self::elements`].
    pub fn units(&self) -> Vec<RingElem> {
        self.elements()
            .into_iter()
            .filter(|e| self.is_unit(e))
            .collect()
    }

    /// `prod_{t in T} (r - t)` evaluated in the ring.
    pub fn vanishing_poly(&self, r: &RingElem, t_set: &[i64]) -> Result<RingElem, RingError> {
        self.check_layout(r)?;
        assert!(!t_set.is_empty(), "T must be non-empty");
        let mut acc = self.one();
        for &t in t_set {
            let factor = self.sub(r, &self.scalar(t))?;
            acc = self.mul(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// Membership in the set of elements whose every residue comes from `T`,
    /// tested as vanishing of `prod_{t in T} (r - t)`. Over products of
    /// fields (and for consecutive-integer `T` in general) this coincides
    /// with the componentwise membership predicate
    /// [`Self::residues_pointwise_in`].
    pub fn in_residue_set(&self, r: &RingElem, t_set: &[i64]) -> Result<bool, RingError> {
        Ok(self.is_zero(&self.vanishing_poly(r, t_set)?))
    }

    /// Componentwise oracle: every residue of `r` equals some `t mod p^k`.
    pub fn residues_pointwise_in(&self, r: &RingElem, t_set: &[i64]) -> bool {
        r.residues
            .iter()
            .zip(&self.components)
            .all(|(&x, c)| {
                t_set
                    .iter()
                    .any(|&t| t.rem_euclid(c.modulus as i64) as u32 == x)
            })
    }

    /// Elements with every residue in `{0, 1}`, in lexicographic order.
    pub fn zero_one_elements(&self) -> Vec<RingElem> {
        let n = self.components.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0..(1u64 << n) {
            let residues = (0..n)
                .map(|i| ((mask >> (n - 1 - i)) & 1) as u32)
                .collect();
            out.push(RingElem { residues });
        }
        out.sort();
        out
    }

    /// Deterministic witness search for `a = xi^2 - eta^2 + s`.
    ///
    /// Shifts are tried in the stored (sorted) order of `shift_set`; for each
    /// shift the unit pair is searched per component in ascending residue
    /// order, `xi` outermost. The first complete witness wins, so results
    /// are reproducible.
    pub fn decompose_square_diff(
        &self,
        a: &RingElem,
        shift_set: &ShiftSet,
    ) -> Result<SquareDiffWitness, RingError> {
        self.check_layout(a)?;
        let local_units: Vec<Vec<u32>> = self
            .components
            .iter()
            .map(|c| (1..c.modulus).filter(|x| x % c.prime != 0).collect())
            .collect();
        'shifts: for s in shift_set.elements() {
            let mut xi = SmallVec::<[u32; 4]>::with_capacity(self.components.len());
            let mut eta = SmallVec::<[u32; 4]>::with_capacity(self.components.len());
            for (i, c) in self.components.iter().enumerate() {
                let m = c.modulus as u64;
                let target = (a.residues[i] as u64 + m - s.residues[i] as u64) % m;
                let mut found = false;
                'search: for &x in &local_units[i] {
                    let x2 = (x as u64 * x as u64) % m;
                    for &y in &local_units[i] {
                        let y2 = (y as u64 * y as u64) % m;
                        if (x2 + m - y2) % m == target {
                            xi.push(x);
                            eta.push(y);
                            found = true;
                            break 'search;
                        }
                    }
                }
                if !found {
                    continue 'shifts;
                }
            }
            return Ok(SquareDiffWitness {
                xi: RingElem { residues: xi },
                eta: RingElem { residues: eta },
                shift: s.clone(),
            });
        }
        Err(RingError::NoDecomposition {
            element: a.to_string(),
            ring: self.describe(),
        })
    }

    /// Human-readable descriptor, e.g. `5,7` or `3^2`.
    pub fn describe(&self) -> String {
        self.components
            .iter()
            .map(|c| {
                if c.exponent == 1 {
                    c.prime.to_string()
                } else {
                    format!("{}^{}", c.prime, c.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn mod_inverse(a: u32, modulus: u32) -> u32 {
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (modulus as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "mod_inverse of a non-unit");
    t.rem_euclid(modulus as i64) as u32
}

/// The finite shift set `S`: a set of constants, always containing the
/// global 0 and 1, such that every ring element is `xi^2 - eta^2 + s` with
/// `xi`, `eta` units and `s` in the set.
///
/// Per component the local constants are `{0, 1, -1}` at residue
/// characteristic 3 and 5, all representatives mod `min(8, p^k)` at
/// characteristic 2, and `{1}` otherwise; the set is the componentwise
/// combination of the local choices with the global constants 0 and 1
/// adjoined. Elements are stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSet {
    elements: Vec<RingElem>,
}

impl ShiftSet {
    pub fn build(ring: &ProductRing) -> ShiftSet {
        let locals: Vec<Vec<u32>> = ring
            .components
            .iter()
            .map(|c| match c.prime {
                2 => (0..c.modulus.min(8)).collect(),
                3 | 5 => vec![0, 1, c.modulus - 1],
                _ => vec![1],
            })
            .collect();
        let mut elements = Vec::new();
        let mut idx = vec![0usize; locals.len()];
        loop {
            let residues = idx
                .iter()
                .zip(&locals)
                .map(|(&i, l)| l[i])
                .collect::<SmallVec<[u32; 4]>>();
            elements.push(RingElem { residues });
            let mut i = locals.len();
            loop {
                if i == 0 {
                    // adjoin the global constants and canonicalize
                    elements.push(ring.zero());
                    elements.push(ring.one());
                    elements.sort();
                    elements.dedup();
                    return ShiftSet { elements };
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < locals[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    pub fn elements(&self) -> &[RingElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &RingElem) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    #[cfg(test)]
    pub(crate) fn from_elements_for_tests(mut elements: Vec<RingElem>) -> ShiftSet {
        elements.sort();
        elements.dedup();
        ShiftSet { elements }
    }
}

/// Witness of one square-difference decomposition: `xi^2 - eta^2 + shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDiffWitness {
    pub xi: RingElem,
    pub eta: RingElem,
    pub shift: RingElem,
}

impl SquareDiffWitness {
    /// Re-multiplies the witness independently and compares with `a`.
    pub fn verify(&self, ring: &ProductRing, a: &RingElem) -> bool {
        if !ring.is_unit(&self.xi) || !ring.is_unit(&self.eta) {
            return false;
        }
        let xi2 = ring.mul(&self.xi, &self.xi).expect("layout");
        let eta2 = ring.mul(&self.eta, &self.eta).expect("layout");
        let diff = ring.sub(&xi2, &eta2).expect("layout");
        let total = ring.add(&diff, &self.shift).expect("layout");
        total == *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5x7() -> ProductRing {
        ProductRing::from_primes(&[(5, 1), (7, 1)]).unwrap()
    }

    fn z9() -> ProductRing {
        ProductRing::from_primes(&[(3, 2)]).unwrap()
    }

    fn z8() -> ProductRing {
        ProductRing::from_primes(&[(2, 3)]).unwrap()
    }

    #[test]
    fn construction_rejects_non_primes_and_huge_carriers() {
        assert_eq!(LocalRing::new(9, 1).unwrap_err(), RingError::NotPrime(9));
        assert_eq!(LocalRing::new(1, 1).unwrap_err(), RingError::NotPrime(1));
        assert!(matches!(
            LocalRing::new(2, 40).unwrap_err(),
            RingError::CarrierTooLarge { .. }
        ));
        assert_eq!(
            ProductRing::new(vec![]).unwrap_err(),
            RingError::EmptyProduct
        );
    }

    #[test]
    fn componentwise_arithmetic() {
        let r = f5x7();
        let a = r.elem(&[3, 2]);
        let b = r.elem(&[4, 6]);
        assert_eq!(r.add(&a, &b).unwrap(), r.elem(&[2, 1]));

        let f5 = ProductRing::from_primes(&[(5, 1)]).unwrap();
        for x in f5.elements() {
            assert_eq!(f5.mul(&f5.zero(), &x).unwrap(), f5.zero());
        }

        let z9 = z9();
        assert_eq!(
            z9.mul(&z9.scalar(4), &z9.scalar(7)).unwrap(),
            z9.one()
        );
    }

    #[test]
    fn layout_mismatch_is_an_error() {
        let r = f5x7();
        let f5 = ProductRing::from_primes(&[(5, 1)]).unwrap();
        let a = r.elem(&[1, 1]);
        let b = f5.elem(&[1]);
        assert_eq!(r.add(&a, &b).unwrap_err(), RingError::LayoutMismatch);
        assert_eq!(r.mul(&b, &a).unwrap_err(), RingError::LayoutMismatch);
    }

    #[test]
    fn units_and_inverses() {
        let r = f5x7();
        let a = r.elem(&[2, 3]);
        assert!(r.is_unit(&a));
        assert_eq!(r.inv(&a).unwrap(), r.elem(&[3, 5]));

        let z9 = z9();
        let three = z9.scalar(3);
        assert!(!z9.is_unit(&three));
        assert_eq!(
            z9.inv(&three).unwrap_err(),
            RingError::NonUnit { component: 0 }
        );

        let f5 = ProductRing::from_primes(&[(5, 1)]).unwrap();
        assert_eq!(f5.inv(&f5.one()).unwrap(), f5.one());

        // offending component index is reported
        let mixed = ProductRing::from_primes(&[(5, 1), (3, 1)]).unwrap();
        assert_eq!(
            mixed.inv(&mixed.elem(&[1, 0])).unwrap_err(),
            RingError::NonUnit { component: 1 }
        );
    }

    #[test]
    fn unit_counts() {
        let f5 = ProductRing::from_primes(&[(5, 1)]).unwrap();
        assert_eq!(f5.units().len(), 4);
        assert_eq!(f5x7().units().len(), 24);
        let z8 = z8();
        let units = z8.units();
        assert_eq!(units.len(), 4);
        let odd: Vec<u32> = units.iter().map(|u| u.residues()[0]).collect();
        assert_eq!(odd, vec![1, 3, 5, 7]);
    }

    #[test]
    fn unit_count_formula_holds() {
        for spec in [
            vec![(5u64, 1u32)],
            vec![(2, 3)],
            vec![(3, 2)],
            vec![(5, 1), (7, 1)],
            vec![(2, 2), (3, 1), (5, 1)],
        ] {
            let ring = ProductRing::from_primes(&spec).unwrap();
            let expected: u64 = spec
                .iter()
                .map(|&(p, k)| (p - 1) * p.pow(k - 1))
                .product();
            assert_eq!(ring.units().len() as u64, expected, "ring {spec:?}");
        }
    }

    #[test]
    fn shift_set_examples() {
        let f7 = ProductRing::from_primes(&[(7, 1)]).unwrap();
        let s = ShiftSet::build(&f7);
        assert_eq!(s.elements(), &[f7.scalar(0), f7.scalar(1)]);

        let r = f5x7();
        let s = ShiftSet::build(&r);
        assert_eq!(s.len(), 4);
        for e in [
            r.elem(&[0, 1]),
            r.elem(&[1, 1]),
            r.elem(&[4, 1]),
            r.elem(&[0, 0]),
        ] {
            assert!(s.contains(&e), "missing {e}");
        }

        let z9 = z9();
        let s = ShiftSet::build(&z9);
        assert_eq!(
            s.elements(),
            &[z9.scalar(0), z9.scalar(1), z9.scalar(8)]
        );

        let z8 = z8();
        assert_eq!(ShiftSet::build(&z8).len(), 8);
    }

    #[test]
    fn decompose_examples() {
        let f7 = ProductRing::from_primes(&[(7, 1)]).unwrap();
        let s = ShiftSet::build(&f7);
        let w = f7.decompose_square_diff(&f7.scalar(3), &s).unwrap();
        assert_eq!(
            (w.xi.clone(), w.eta.clone(), w.shift.clone()),
            (f7.scalar(2), f7.scalar(1), f7.scalar(0))
        );
        assert!(w.verify(&f7, &f7.scalar(3)));

        let f5 = ProductRing::from_primes(&[(5, 1)]).unwrap();
        let s = ShiftSet::build(&f5);
        let w = f5.decompose_square_diff(&f5.zero(), &s).unwrap();
        assert_eq!(
            (w.xi, w.eta, w.shift),
            (f5.one(), f5.one(), f5.zero())
        );

        let z8 = z8();
        let s = ShiftSet::build(&z8);
        let w = z8.decompose_square_diff(&z8.scalar(5), &s).unwrap();
        assert_eq!(
            (w.xi, w.eta, w.shift),
            (z8.one(), z8.one(), z8.scalar(5))
        );
    }

    #[test]
    fn decompose_succeeds_everywhere_on_supported_rings() {
        for spec in [
            vec![(5u64, 1u32)],
            vec![(7, 1)],
            vec![(3, 1)],
            vec![(3, 2)],
            vec![(2, 3)],
            vec![(2, 4)],
            vec![(5, 2)],
            vec![(5, 1), (7, 1)],
            vec![(2, 2), (3, 1), (7, 1)],
        ] {
            let ring = ProductRing::from_primes(&spec).unwrap();
            let s = ShiftSet::build(&ring);
            for a in ring.elements() {
                let w = ring
                    .decompose_square_diff(&a, &s)
                    .unwrap_or_else(|e| panic!("{e} (ring {})", ring.describe()));
                assert!(w.verify(&ring, &a), "bad witness for {a}");
                assert!(s.contains(&w.shift), "shift {} outside S", w.shift);
            }
        }
    }

    #[test]
    fn decompose_failure_is_reported() {
        // A deliberately broken shift set: over Z/8 the difference of two
        // unit squares is always 0, so the shift must equal the element.
        let z8 = z8();
        let s = ShiftSet::from_elements_for_tests(vec![z8.zero(), z8.one()]);
        let err = z8.decompose_square_diff(&z8.scalar(5), &s).unwrap_err();
        assert!(matches!(err, RingError::NoDecomposition { .. }));
    }

    #[test]
    fn residue_set_membership() {
        let r = f5x7();
        assert!(r.in_residue_set(&r.elem(&[1, 0]), &[0, 1]).unwrap());
        assert!(!r.in_residue_set(&r.elem(&[2, 0]), &[0, 1]).unwrap());

        let z9 = z9();
        let three = z9.scalar(3);
        assert_eq!(z9.vanishing_poly(&three, &[0, 1]).unwrap(), z9.scalar(6));
        assert!(!z9.in_residue_set(&three, &[0, 1]).unwrap());
    }

    #[test]
    fn residue_set_matches_pointwise_oracle() {
        // T = {0, 1} agrees with the pointwise predicate on every ring
        // (consecutive integers stay coprime in each component).
        for spec in [
            vec![(5u64, 1u32), (7, 1)],
            vec![(3, 2)],
            vec![(2, 3)],
            vec![(5, 2)],
        ] {
            let ring = ProductRing::from_primes(&spec).unwrap();
            for r in ring.elements() {
                assert_eq!(
                    ring.in_residue_set(&r, &[0, 1]).unwrap(),
                    ring.residues_pointwise_in(&r, &[0, 1]),
                    "r = {r} over {}",
                    ring.describe()
                );
            }
        }
        // over products of prime fields the equivalence holds for any T
        let r = f5x7();
        for t_set in [vec![0i64], vec![2, 3], vec![0, 1, 2], vec![0, 4]] {
            for e in r.elements() {
                assert_eq!(
                    r.in_residue_set(&e, &t_set).unwrap(),
                    r.residues_pointwise_in(&e, &t_set)
                );
            }
        }
    }

    #[test]
    fn zero_one_elements_enumeration() {
        let r = f5x7();
        let z = r.zero_one_elements();
        assert_eq!(z.len(), 4);
        assert!(z.contains(&r.elem(&[1, 0])));
    }

    proptest! {
        #[test]
        fn ring_axioms_f5x7(
            a in (0i64..35),
            b in (0i64..35),
            c in (0i64..35),
        ) {
            let r = f5x7();
            let ea = r.elem(&[a % 5, a % 7]);
            let eb = r.elem(&[b % 5, b % 7]);
            let ec = r.elem(&[c % 5, c % 7]);
            // associativity and commutativity
            let ab = r.add(&ea, &eb).unwrap();
            prop_assert_eq!(r.add(&ab, &ec).unwrap(),
                r.add(&ea, &r.add(&eb, &ec).unwrap()).unwrap());
            prop_assert_eq!(r.add(&ea, &eb).unwrap(), r.add(&eb, &ea).unwrap());
            let m_ab = r.mul(&ea, &eb).unwrap();
            prop_assert_eq!(r.mul(&m_ab, &ec).unwrap(),
                r.mul(&ea, &r.mul(&eb, &ec).unwrap()).unwrap());
            prop_assert_eq!(r.mul(&ea, &eb).unwrap(), r.mul(&eb, &ea).unwrap());
            // distributivity
            prop_assert_eq!(
                r.mul(&ea, &r.add(&eb, &ec).unwrap()).unwrap(),
                r.add(&r.mul(&ea, &eb).unwrap(), &r.mul(&ea, &ec).unwrap()).unwrap()
            );
            // additive inverse
            prop_assert_eq!(r.add(&ea, &r.neg(&ea)).unwrap(), r.zero());
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        // exhaustive triples on a ring with |R| <= 50
        let ring = ProductRing::from_primes(&[(2, 2), (3, 1)]).unwrap();
        let elems = ring.elements();
        assert_eq!(elems.len(), 12);
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let ab_c = ring.mul(&ring.mul(a, b).unwrap(), c).unwrap();
                    let a_bc = ring.mul(a, &ring.mul(b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                    let dist_l = ring.mul(a, &ring.add(b, c).unwrap()).unwrap();
                    let dist_r = ring
                        .add(&ring.mul(a, b).unwrap(), &ring.mul(a, c).unwrap())
                        .unwrap();
                    assert_eq!(dist_l, dist_r);
                }
            }
        }
    }
}
