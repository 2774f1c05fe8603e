//! Exact SL2 arithmetic over a [`ProductRing`], together with the central
//! quotients SL2/<-1> and PSL2.
//!
//! Group elements are stored as canonical coset representatives: the
//! lexicographic minimum of `{M z : z in Z}` under the entry-major,
//! component-minor order on `(a, b, c, d)`. Equality of [`GroupElem`] is
//! therefore plain equality of representatives.

use crate::ring::{ProductRing, RingElem, RingError};
use std::fmt;
use thiserror::Error;

/// Upper bound on the number of 4-tuples scanned by [`GroupCtx::enumerate`].
const ENUMERATION_GUARD: u128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Sl2Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("matrix has determinant {det}, expected 1")]
    NotUnimodular { det: String },
    #[error("element layout does not match the group ring")]
    LayoutMismatch,
    #[error(
        "enumeration would scan {candidates} tuples (guard {guard}); \
         a Bruhat-cell enumeration would be needed for rings this large"
    )]
    TooLarge { candidates: u128, guard: u128 },
}

/// Which central subgroup the group is taken modulo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    /// Plain SL2.
    Trivial,
    /// SL2 modulo the global sign `<-1>`.
    PlusMinusOne,
    /// SL2 modulo its full centre (componentwise signs): PSL2.
    FullCentre,
}

impl QuotientKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuotientKind::Trivial => "sl2",
            QuotientKind::PlusMinusOne => "mod-pm1",
            QuotientKind::FullCentre => "psl2",
        }
    }
}

impl fmt::Display for QuotientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A 2x2 matrix over the ring with determinant 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
    pub d: RingElem,
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mat2 {
    /// Checked constructor: verifies `ad - bc = 1`.
    pub fn new(
        ring: &ProductRing,
        a: RingElem,
        b: RingElem,
        c: RingElem,
        d: RingElem,
    ) -> Result<Mat2, Sl2Error> {
        let m = Mat2 { a, b, c, d };
        let det = m.det(ring)?;
        if det != ring.one() {
            return Err(Sl2Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(m)
    }

    pub fn identity(ring: &ProductRing) -> Mat2 {
        Mat2 {
            a: ring.one(),
            b: ring.zero(),
            c: ring.zero(),
            d: ring.one(),
        }
    }

    pub fn det(&self, ring: &ProductRing) -> Result<RingElem, Sl2Error> {
        let ad = ring.mul(&self.a, &self.d)?;
        let bc = ring.mul(&self.b, &self.c)?;
        Ok(ring.sub(&ad, &bc)?)
    }

    pub fn mul(&self, ring: &ProductRing, rhs: &Mat2) -> Result<Mat2, Sl2Error> {
        let a = ring.add(
            &ring.mul(&self.a, &rhs.a)?,
            &ring.mul(&self.b, &rhs.c)?,
        )?;
        let b = ring.add(
            &ring.mul(&self.a, &rhs.b)?,
            &ring.mul(&self.b, &rhs.d)?,
        )?;
        let c = ring.add(
            &ring.mul(&self.c, &rhs.a)?,
            &ring.mul(&self.d, &rhs.c)?,
        )?;
        let d = ring.add(
            &ring.mul(&self.c, &rhs.b)?,
            &ring.mul(&self.d, &rhs.d)?,
        )?;
        Ok(Mat2 { a, b, c, d })
    }

    /// Adjugate inverse, valid because the determinant is 1.
    pub fn inv(&self, ring: &ProductRing) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: ring.neg(&self.b),
            c: ring.neg(&self.c),
            d: self.a.clone(),
        }
    }

    /// Entrywise scaling by a central scalar.
    fn scale(&self, ring: &ProductRing, eps: &RingElem) -> Mat2 {
        let s = |x: &RingElem| ring.mul(x, eps).expect("layout");
        Mat2 {
            a: s(&self.a),
            b: s(&self.b),
            c: s(&self.c),
            d: s(&self.d),
        }
    }
}

/// Canonical coset representative of a matrix modulo the chosen centre.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElem {
    rep: Mat2,
}

impl GroupElem {
    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }

    pub fn into_rep(self) -> Mat2 {
        self.rep
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// The group context: ring, quotient, and the standard parameters
/// `u = u(1)`, `v = v(1)`, `h(tau)` and the Weyl element `w = u v u`.
///
/// `tau` has residue 2 at odd-characteristic components and 3 at
/// characteristic-2 components.
#[derive(Debug, Clone)]
pub struct GroupCtx {
    ring: ProductRing,
    quotient: QuotientKind,
    /// Central scalars of the chosen quotient subgroup, ascending.
    central_scalars: Vec<RingElem>,
    tau: RingElem,
    u1: GroupElem,
    v1: GroupElem,
    h_tau: GroupElem,
    weyl: GroupElem,
}

impl GroupCtx {
    pub fn new(ring: ProductRing, quotient: QuotientKind) -> GroupCtx {
        let central_scalars = central_scalars(&ring, quotient);
        let tau_vals: Vec<i64> = ring
            .components()
            .iter()
            .map(|c| if c.prime() == 2 { 3 } else { 2 })
            .collect();
        let tau = ring.elem(&tau_vals);
        let canon = |mat: Mat2| GroupElem {
            rep: canonical_in(&ring, &central_scalars, mat),
        };
        let u1 = canon(Mat2 {
            a: ring.one(),
            b: ring.one(),
            c: ring.zero(),
            d: ring.one(),
        });
        let v1 = canon(Mat2 {
            a: ring.one(),
            b: ring.zero(),
            c: ring.neg(&ring.one()),
            d: ring.one(),
        });
        let h_tau = canon(Mat2 {
            a: ring.inv(&tau).expect("tau is a unit by construction"),
            b: ring.zero(),
            c: ring.zero(),
            d: tau.clone(),
        });
        let uv = u1.rep.mul(&ring, &v1.rep).expect("layout");
        let weyl = canon(uv.mul(&ring, &u1.rep).expect("layout"));
        GroupCtx {
            ring,
            quotient,
            central_scalars,
            tau,
            u1,
            v1,
            h_tau,
            weyl,
        }
    }

    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn quotient(&self) -> QuotientKind {
        self.quotient
    }

    pub fn tau(&self) -> &RingElem {
        &self.tau
    }

    pub fn u1(&self) -> &GroupElem {
        &self.u1
    }

    pub fn v1(&self) -> &GroupElem {
        &self.v1
    }

    pub fn h_tau(&self) -> &GroupElem {
        &self.h_tau
    }

    /// The Weyl element `w = u v u = [[0,1],[-1,0]]`.
    pub fn weyl(&self) -> &GroupElem {
        &self.weyl
    }

    pub fn central_scalars(&self) -> &[RingElem] {
        &self.central_scalars
    }

    /// Canonical representative: lexicographic minimum over the coset.
    pub fn canonical(&self, mat: Mat2) -> Mat2 {
        canonical_in(&self.ring, &self.central_scalars, mat)
    }

    /// Wraps a unimodular matrix as a group element (canonicalizing).
    pub fn elem(&self, mat: Mat2) -> GroupElem {
        GroupElem {
            rep: self.canonical(mat),
        }
    }

    pub fn identity(&self) -> GroupElem {
        self.elem(Mat2::identity(&self.ring))
    }

    fn check_layout(&self, g: &GroupElem) -> Result<(), Sl2Error> {
        if g.rep.a.len() != self.ring.num_components() {
            return Err(Sl2Error::LayoutMismatch);
        }
        Ok(())
    }

    /// Upper unipotent `u(lambda) = [[1, lambda], [0, 1]]`.
    pub fn u(&self, lambda: &RingElem) -> GroupElem {
        self.elem(Mat2 {
            a: self.ring.one(),
            b: lambda.clone(),
            c: self.ring.zero(),
            d: self.ring.one(),
        })
    }

    /// Lower unipotent `v(lambda) = [[1, 0], [-lambda, 1]]`.
    pub fn v(&self, lambda: &RingElem) -> GroupElem {
        self.elem(Mat2 {
            a: self.ring.one(),
            b: self.ring.zero(),
            c: self.ring.neg(lambda),
            d: self.ring.one(),
        })
    }

    /// Torus element `h(lambda) = diag(lambda^-1, lambda)`; `lambda` must be
    /// a unit.
    pub fn h(&self, lambda: &RingElem) -> Result<GroupElem, Sl2Error> {
        let inv = self.ring.inv(lambda)?;
        Ok(self.elem(Mat2 {
            a: inv,
            b: self.ring.zero(),
            c: self.ring.zero(),
            d: lambda.clone(),
        }))
    }

    pub fn mul(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem, Sl2Error> {
        self.check_layout(g)?;
        self.check_layout(h)?;
        Ok(self.elem(g.rep.mul(&self.ring, &h.rep)?))
    }

    pub fn inv(&self, g: &GroupElem) -> GroupElem {
        self.elem(g.rep.inv(&self.ring))
    }

    /// Conjugation with right-action convention: `g^x = x^-1 g x`.
    pub fn conj(&self, g: &GroupElem, x: &GroupElem) -> Result<GroupElem, Sl2Error> {
        self.check_layout(g)?;
        self.check_layout(x)?;
        let xi = x.rep.inv(&self.ring);
        let gx = g.rep.mul(&self.ring, &x.rep)?;
        Ok(self.elem(xi.mul(&self.ring, &gx)?))
    }

    pub fn pow(&self, g: &GroupElem, n: i64) -> Result<GroupElem, Sl2Error> {
        self.check_layout(g)?;
        let base = if n < 0 { self.inv(g) } else { g.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Tests whether two raw matrices represent the same coset, i.e. whether
    /// `B = A Z` for some `Z` in the designated central subgroup.
    pub fn quotient_equiv(&self, a: &Mat2, b: &Mat2) -> bool {
        self.central_scalars
            .iter()
            .any(|eps| a.scale(&self.ring, eps) == *b)
    }

    /// Enumerates the whole group: all determinant-1 matrices, canonicalized
    /// and deduplicated, in first-encounter order of the raw 4-tuple scan.
    pub fn enumerate(&self) -> Result<Vec<GroupElem>, Sl2Error> {
        let size = self.ring.size() as u128;
        let candidates = size.pow(4);
        if candidates > ENUMERATION_GUARD {
            return Err(Sl2Error::TooLarge {
                candidates,
                guard: ENUMERATION_GUARD,
            });
        }
        let elems = self.ring.elements();
        let one = self.ring.one();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for a in &elems {
            for d in &elems {
                let ad = self.ring.mul(a, d).expect("layout");
                for b in &elems {
                    for c in &elems {
                        let bc = self.ring.mul(b, c).expect("layout");
                        let det = self.ring.sub(&ad, &bc).expect("layout");
                        if det != one {
                            continue;
                        }
                        let g = self.elem(Mat2 {
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                            d: d.clone(),
                        });
                        if seen.insert(g.clone()) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Brute-force centre: prefilters against the two unipotent generators,
    /// then verifies each survivor against every group element.
    pub fn centre(&self, group: &[GroupElem]) -> Vec<GroupElem> {
        let stage1: Vec<&GroupElem> = group
            .iter()
            .filter(|z| {
                self.commutes(z, &self.u1) && self.commutes(z, &self.v1)
            })
            .collect();
        stage1
            .into_iter()
            .filter(|z| group.iter().all(|g| self.commutes(z, g)))
            .cloned()
            .collect()
    }

    /// Brute-force centralizer of `g` within the listed carrier.
    pub fn centralizer(&self, group: &[GroupElem], g: &GroupElem) -> Vec<GroupElem> {
        group
            .iter()
            .filter(|x| self.commutes(x, g))
            .cloned()
            .collect()
    }

    pub fn commutes(&self, x: &GroupElem, y: &GroupElem) -> bool {
        let xy = x.rep.mul(&self.ring, &y.rep).expect("layout");
        let yx = y.rep.mul(&self.ring, &x.rep).expect("layout");
        self.quotient_equiv(&xy, &yx)
    }
}

fn canonical_in(ring: &ProductRing, scalars: &[RingElem], mat: Mat2) -> Mat2 {
    let mut best = mat.clone();
    for eps in &scalars[1..] {
        let candidate = mat.scale(ring, eps);
        if candidate < best {
            best = candidate;
        }
    }
    best
}

/// Central scalars `eps` with `eps^2 = 1` belonging to the quotient's
/// subgroup, in ascending lexicographic order.
fn central_scalars(ring: &ProductRing, quotient: QuotientKind) -> Vec<RingElem> {
    let mut out = match quotient {
        QuotientKind::Trivial => vec![ring.one()],
        QuotientKind::PlusMinusOne => vec![ring.one(), ring.neg(&ring.one())],
        QuotientKind::FullCentre => {
            // componentwise solutions of eps^2 = 1
            let locals: Vec<Vec<u32>> = ring
                .components()
                .iter()
                .map(|c| {
                    let m = c.modulus();
                    if c.prime() != 2 {
                        vec![1, m - 1]
                    } else {
                        match c.exponent() {
                            1 => vec![1],
                            2 => vec![1, 3],
                            _ => vec![1, m / 2 - 1, m / 2 + 1, m - 1],
                        }
                    }
                })
                .collect();
            let mut combos = vec![Vec::new()];
            for local in &locals {
                let mut next = Vec::new();
                for prefix in &combos {
                    for &x in local {
                        let mut p = prefix.clone();
                        p.push(x as i64);
                        next.push(p);
                    }
                }
                combos = next;
            }
            combos.into_iter().map(|v| ring.elem(&v)).collect()
        }
    };
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|e| {
        let sq = ring.mul(e, e).expect("layout");
        sq == ring.one()
    }));
    out
}

/// One elementary 2x2 factor: `[[1, p], [0, 1]]` when `upper`, else
/// `[[1, 0], [p, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemFactor {
    pub upper: bool,
    pub param: RingElem,
}

impl ElemFactor {
    pub fn matrix(&self, ring: &ProductRing) -> Mat2 {
        if self.upper {
            Mat2 {
                a: ring.one(),
                b: self.param.clone(),
                c: ring.zero(),
                d: ring.one(),
            }
        } else {
            Mat2 {
                a: ring.one(),
                b: ring.zero(),
                c: self.param.clone(),
                d: ring.one(),
            }
        }
    }
}

/// Writes `diag(a, a^-1)` as six elementary factors, using the torus
/// identity `diag(x^-1, x) = v(x) u(x^-1) v(x) w^-1` with
/// `w^-1 = u(-1) v(-1) u(-1)` (here `v(x)` denotes `[[1,0],[-x,1]]`).
pub fn torus_factorization(ring: &ProductRing, a: &RingElem) -> Vec<ElemFactor> {
    let xi = ring.inv(a).expect("torus entry must be a unit");
    let xi_inv = a.clone();
    let low = |x: RingElem| ElemFactor {
        upper: false,
        param: x,
    };
    let up = |x: RingElem| ElemFactor {
        upper: true,
        param: x,
    };
    let factors = vec![
        low(ring.neg(&xi)),
        up(xi_inv),
        low(ring.neg(&xi)),
        up(ring.scalar(-1)),
        low(ring.one()),
        up(ring.scalar(-1)),
    ];
    debug_assert_eq!(
        factors
            .iter()
            .fold(Mat2::identity(ring), |acc, f| acc
                .mul(ring, &f.matrix(ring))
                .expect("layout")),
        Mat2 {
            a: a.clone(),
            b: ring.zero(),
            c: ring.zero(),
            d: ring.inv(a).expect("unit"),
        }
    );
    factors
}

/// Factors a determinant-1 matrix into elementary upper/lower factors.
///
/// If the corner is not a unit, one upper pre-factor fixes it (the
/// multiplier found per component by ascending exhaustive search); the rest
/// is the lower-torus-upper factorization with the torus expanded by
/// [`torus_factorization`]. At most 9 factors, zero parameters skipped.
pub fn unipotent_factorization(ring: &ProductRing, m: &Mat2) -> Vec<ElemFactor> {
    let mut out = Vec::new();
    let mut work = m.clone();
    if !ring.is_unit(&work.a) {
        let mut s_res = Vec::with_capacity(ring.num_components());
        for (i, c) in ring.components().iter().enumerate() {
            let a = work.a.residues()[i] as u64;
            let cc = work.c.residues()[i] as u64;
            let modulus = c.modulus() as u64;
            let s = (0..modulus)
                .find(|&s| ((a + s * cc) % modulus) % c.prime() as u64 != 0)
                .expect("det 1 forces a unit in the first column of each component");
            s_res.push(s as i64);
        }
        let s = ring.elem(&s_res);
        let pre = ElemFactor {
            upper: true,
            param: s.clone(),
        };
        work = pre.matrix(ring).mul(ring, &work).expect("layout");
        out.push(ElemFactor {
            upper: true,
            param: ring.neg(&s),
        });
    }
    // work = low(c a^-1) . diag(a, a^-1) . up(a^-1 b)
    let a_inv = ring.inv(&work.a).expect("corner unit");
    let low_param = ring.mul(&work.c, &a_inv).expect("layout");
    if !ring.is_zero(&low_param) {
        out.push(ElemFactor {
            upper: false,
            param: low_param,
        });
    }
    if work.a != ring.one() {
        out.extend(torus_factorization(ring, &work.a));
    }
    let up_param = ring.mul(&a_inv, &work.b).expect("layout");
    if !ring.is_zero(&up_param) {
        out.push(ElemFactor {
            upper: true,
            param: up_param,
        });
    }
    debug_assert_eq!(
        out.iter().skip(1).fold(
            if out.is_empty() {
                Mat2::identity(ring)
            } else {
                out[0].matrix(ring)
            },
            |acc, f| acc.mul(ring, &f.matrix(ring)).expect("layout")
        ),
        *m
    );
    out
}
