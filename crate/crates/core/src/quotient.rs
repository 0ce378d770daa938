//! Quotients of the charts by a subtorus `L ⊆ N`: the face of each cone
//! whose interior meets `L`, the quotient lattice and projected cones, and
//! the invariant semigroups that serve as an independent check.

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cones::{double_description, Cone};
use crate::error::{Error, Result};
use crate::fans::build_system;
use crate::grading::{ConicalRing, Monomial};
use crate::lattice::{dot, kernel_basis, saturate, IntegerMatrix, Sublattice};

/// Generators of `M_{J_f} ∩ L^⊥`, written in coordinates of the chosen
/// basis of `M` (so they pair with `N` directly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    pub ambient: Sublattice,
    pub hilbert_generators: Vec<Vec<BigInt>>,
}

impl AffineSemigroup {
    pub fn cone(&self) -> Cone {
        Cone::new(self.ambient.ambient_rank(), self.hilbert_generators.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPiece {
    pub label: String,
    pub monomial: Monomial,
    pub sigma: Cone,
    pub selected_face: Cone,
    pub lprime: Sublattice,
    pub quotient_rank: usize,
    pub projection: IntegerMatrix,
    pub image_cone: Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSystem {
    pub pieces: Vec<QuotientPiece>,
    /// All charts produced the same `L′`.
    pub uniform_lattice: bool,
}

/// The largest face of a simplicial `sigma` whose relative interior meets `L_ℝ`.
pub fn select_face(sigma: &Cone, l: &Sublattice) -> Result<Cone> {
    if !sigma.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let k = sigma.generators().len();
    let mut good: Vec<Vec<usize>> = Vec::new();
    for size in (0..=k).rev() {
        for sub in (0..k).combinations(size) {
            if good.iter().any(|g| sub.iter().all(|i| g.contains(i))) {
                continue;
            }
            if sigma.sub_cone(&sub).relint_meets_subspace(l)? {
                good.push(sub);
            }
        }
    }
    match good.as_slice() {
        [one] => Ok(sigma.sub_cone(one)),
        _ => Err(Error::AmbiguousFace),
    }
}

/// `L′ = saturation of L + span(face)` and a projection `P: N → N/L′`
/// whose rows span `L′^⊥`.
pub fn quotient_lattice(n_rank: usize, l: &Sublattice, face: &Cone) -> Result<(Sublattice, IntegerMatrix)> {
    let mut gens = l.basis_rows();
    gens.extend(face.generators().iter().cloned());
    let lprime = saturate(&Sublattice::from_generators(n_rank, &gens)?);
    let p = if lprime.rank() == 0 {
        IntegerMatrix::identity(n_rank)
    } else {
        kernel_basis(lprime.basis()).basis().clone()
    };
    Ok((lprime, p))
}

/// One piece per relevant generator of `B`, in the coordinates of `m_basis`.
pub fn quotient_system(conical: &ConicalRing, m_basis: Option<&Sublattice>, l: &Sublattice) -> Result<QuotientSystem> {
    let sys = build_system(conical, m_basis)?;
    let k = sys.ambient_rank;
    if l.ambient_rank() != k {
        return Err(Error::DimensionMismatch { expected: k, found: l.ambient_rank() });
    }
    if !l.is_saturated() {
        return Err(Error::InvalidSystem("the sublattice L must be saturated".into()));
    }
    let mut pieces = Vec::with_capacity(sys.cones.len());
    for mc in &sys.cones {
        let face = select_face(&mc.cone, l)?;
        let (lprime, p) = quotient_lattice(k, l, &face)?;
        let image_cone = mc.cone.image(&p)?;
        if !image_cone.is_strictly_convex() {
            return Err(Error::NotStrictlyConvex);
        }
        pieces.push(QuotientPiece {
            label: mc.label.clone(),
            monomial: mc.monomial.clone().expect("ring-derived system"),
            sigma: mc.cone.clone(),
            selected_face: face,
            quotient_rank: p.rows(),
            lprime,
            projection: p,
            image_cone,
        });
    }
    let uniform_lattice = pieces.windows(2).all(|w| w[0].lprime.lattice_eq(&w[1].lprime));
    Ok(QuotientSystem { pieces, uniform_lattice })
}

/// Hilbert generators of `M_{J_f} ∩ L^⊥` by enumeration in the box
/// `[-bound, bound]^k` of basis coordinates.
pub fn invariant_semigroup(conical: &ConicalRing, m_basis: Option<&Sublattice>, f: &Monomial, l: &Sublattice, bound: u32) -> Result<AffineSemigroup> {
    let ring = conical.ring();
    let basis = match m_basis {
        Some(b) => b.clone(),
        None => ring.grading_kernel(),
    };
    let k = basis.rank();
    if l.ambient_rank() != k {
        return Err(Error::DimensionMismatch { expected: k, found: l.ambient_rank() });
    }
    let support = f.support();
    let cols = basis.basis().to_columns();
    let ineqs: Vec<Vec<BigInt>> = (0..ring.n()).filter(|i| !support.contains(i)).map(|i| cols[i].clone()).collect();
    let eqs = l.basis_rows();
    let inside = |c: &[BigInt]| ineqs.iter().all(|u| !dot(u, c).is_negative()) && eqs.iter().all(|e| dot(e, c).is_zero());

    let b = i64::from(bound);
    let mut points: Vec<Vec<BigInt>> = Vec::new();
    if k > 0 {
        for c in (0..k).map(|_| -b..=b).multi_cartesian_product() {
            let v: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
            if v.iter().any(|x| !x.is_zero()) && inside(&v) {
                points.push(v);
            }
        }
    }
    let norm = |v: &[BigInt]| v.iter().map(|x| x.abs()).sum::<BigInt>();
    let set: HashSet<Vec<BigInt>> = points.iter().cloned().collect();
    points.sort_by_key(|p| norm(p));
    let mut gens = Vec::new();
    for x in &points {
        let nx = norm(x);
        let reducible = points.iter().take_while(|y| norm(y) < nx).any(|y| {
            let z: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            norm(&z) < nx && set.contains(&z)
        });
        if !reducible {
            gens.push(x.clone());
        }
    }
    let (rays, lin) = double_description(k, &ineqs, &eqs);
    let mut expected: Vec<Vec<BigInt>> = rays;
    for v in lin {
        expected.push(v.iter().map(|x| -x).collect());
        expected.push(v);
    }
    let got = Cone::new(k, gens.clone());
    if !got.set_eq(&Cone::new(k, expected)) {
        return Err(Error::BoxTooSmall(bound));
    }
    Ok(AffineSemigroup { ambient: Sublattice::full(k), hilbert_generators: gens })
}

/// Pulls `(σ′)^∨` back along `P` and compares it with the cone spanned by
/// the invariant semigroup of the same chart.
pub fn oracle_matches(piece: &QuotientPiece, semigroup: &AffineSemigroup) -> Result<bool> {
    let k = piece.sigma.ambient_rank();
    let dual = piece.image_cone.dual();
    let pt = piece.projection.transpose();
    let pulled = dual.generators().iter().map(|g| pt.mul_vec(g)).collect::<Result<Vec<_>>>()?;
    Ok(Cone::new(k, pulled).set_eq(&semigroup.cone()))
}
