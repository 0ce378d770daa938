//! Rational polyhedral cones given by integer generators, with exact
//! double description for duality, intersection and face tests.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dot, kernel_basis, primitive, rank_of, saturate, IntegerMatrix, Sublattice};

/// `{x : ⟨u,x⟩ ≥ 0 for every inequality, ⟨e,x⟩ = 0 for every equality}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceRep {
    pub ambient_rank: usize,
    pub inequalities: Vec<Vec<BigInt>>,
    pub equalities: Vec<Vec<BigInt>>,
}

impl HalfspaceRep {
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.inequalities.iter().all(|u| !dot(u, x).is_negative()) && self.equalities.iter().all(|e| dot(e, x).is_zero())
    }

    /// Strictly inside every inequality while satisfying the equalities.
    pub fn strictly_contains(&self, x: &[BigInt]) -> bool {
        self.inequalities.iter().all(|u| dot(u, x).is_positive()) && self.equalities.iter().all(|e| dot(e, x).is_zero())
    }

    /// Generators of the cone described by this representation.
    pub fn to_cone(&self) -> Cone {
        let (rays, lin) = double_description(self.ambient_rank, &self.inequalities, &self.equalities);
        Cone::from_rays_and_lineality(self.ambient_rank, rays, lin)
    }
}

/// A cone in `R^ambient_rank` generated by integer vectors.
///
/// Generators are kept in canonical form: primitive, sorted, without zero
/// vectors or redundant members. A cone with a nontrivial lineality space is
/// stored as its extreme rays modulo lineality plus `±` a basis of the
/// lineality space, so derived equality is reliable only for pointed cones;
/// use [`Cone::set_eq`] for set equality in general.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    generators: Vec<Vec<BigInt>>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{{0}}");
        }
        let gens: Vec<String> =
            self.generators.iter().map(|g| format!("({})", g.iter().map(|x| x.to_string()).join(","))).collect();
        write!(f, "Cone({})", gens.join(", "))
    }
}

impl Cone {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Cone {
        assert!(generators.iter().all(|g| g.len() == ambient_rank), "generator length differs from ambient rank");
        let mut gens: Vec<Vec<BigInt>> =
            generators.iter().filter(|g| g.iter().any(|x| !x.is_zero())).map(|g| primitive(g)).collect();
        gens.sort();
        gens.dedup();
        if rank_of(&gens, ambient_rank) == gens.len() {
            return Cone { ambient_rank, generators: gens };
        }
        let dual = Cone::raw_h_rep(ambient_rank, &gens);
        dual.to_cone()
    }

    /// Checked constructor for untrusted input.
    pub fn try_new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Result<Cone> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        Ok(Cone::new(ambient_rank, generators))
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Cone {
        Cone::new(ambient_rank, generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone { ambient_rank, generators: Vec::new() }
    }

    /// The whole space `R^ambient_rank`.
    pub fn full_space(ambient_rank: usize) -> Cone {
        let basis = IntegerMatrix::identity(ambient_rank).to_rows();
        Cone::from_rays_and_lineality(ambient_rank, Vec::new(), basis)
    }

    fn from_rays_and_lineality(ambient_rank: usize, rays: Vec<Vec<BigInt>>, lin: Vec<Vec<BigInt>>) -> Cone {
        let mut gens: Vec<Vec<BigInt>> = rays.iter().map(|r| primitive(r)).collect();
        if !lin.is_empty() {
            let lin = saturate(&Sublattice::from_generators(ambient_rank, &lin).expect("lineality vectors"));
            for l in lin.basis_rows() {
                gens.push(l.iter().map(|x| -x).collect());
                gens.push(l);
            }
        }
        gens.sort();
        gens.dedup();
        Cone { ambient_rank, generators: gens }
    }

    fn raw_h_rep(ambient_rank: usize, gens: &[Vec<BigInt>]) -> HalfspaceRep {
        let (rays, lin) = double_description(ambient_rank, gens, &[]);
        HalfspaceRep { ambient_rank, inequalities: rays, equalities: lin }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dim(&self) -> usize {
        rank_of(&self.generators, self.ambient_rank)
    }

    pub fn full_dimensional(&self) -> bool {
        self.dim() == self.ambient_rank
    }

    /// Halfspace description: inequalities are the extreme rays of the dual
    /// cone, equalities a basis of the orthogonal complement of the span.
    pub fn h_rep(&self) -> HalfspaceRep {
        Cone::raw_h_rep(self.ambient_rank, &self.generators)
    }

    pub fn dual(&self) -> Cone {
        let h = self.h_rep();
        Cone::from_rays_and_lineality(self.ambient_rank, h.inequalities, h.equalities)
    }

    /// Basis of the largest linear subspace contained in the cone.
    pub fn lineality(&self) -> Sublattice {
        let dual_span = self.dual().generators.clone();
        saturate(&kernel_basis(&IntegerMatrix::from_rows(self.ambient_rank, &dual_span)))
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().rank() == 0
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.is_pointed()
    }

    pub fn is_simplicial(&self) -> bool {
        rank_of(&self.generators, self.ambient_rank) == self.generators.len()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.ambient_rank && (self.generators.is_empty() && x.iter().all(|v| v.is_zero()) || self.h_rep().contains(x))
    }

    /// Membership in the relative interior.
    pub fn in_relint(&self, x: &[BigInt]) -> bool {
        if self.generators.is_empty() {
            return x.iter().all(|v| v.is_zero());
        }
        self.h_rep().strictly_contains(x)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        if self.ambient_rank != other.ambient_rank {
            return false;
        }
        if other.is_zero() {
            return true;
        }
        let h = self.h_rep();
        other.generators.iter().all(|g| h.contains(g))
    }

    pub fn set_eq(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    /// The sum of the generators, a point in the relative interior.
    pub fn interior_point(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.ambient_rank];
        for g in &self.generators {
            for (a, b) in p.iter_mut().zip(g) {
                *a += b;
            }
        }
        p
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: other.ambient_rank });
        }
        let a = self.h_rep();
        let b = other.h_rep();
        let h = HalfspaceRep {
            ambient_rank: self.ambient_rank,
            inequalities: a.inequalities.into_iter().chain(b.inequalities).collect(),
            equalities: a.equalities.into_iter().chain(b.equalities).collect(),
        };
        Ok(h.to_cone())
    }

    /// Whether `self` is a face of `sigma`.
    pub fn is_face_of(&self, sigma: &Cone) -> bool {
        if !sigma.contains_cone(self) {
            return false;
        }
        let h = sigma.h_rep();
        let p = self.interior_point();
        let tight: Vec<&Vec<BigInt>> = h.inequalities.iter().filter(|u| dot(u, &p).is_zero()).collect();
        let face_gens: Vec<Vec<BigInt>> =
            sigma.generators.iter().filter(|g| tight.iter().all(|u| dot(u, g).is_zero())).cloned().collect();
        Cone::new(self.ambient_rank, face_gens).set_eq(self)
    }

    /// All faces of a simplicial cone, one per subset of generators, ordered
    /// by size and then lexicographically by generator index.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        let k = self.generators.len();
        let mut out = Vec::with_capacity(1 << k);
        for size in 0..=k {
            for subset in (0..k).combinations(size) {
                out.push(self.sub_cone(&subset));
            }
        }
        Ok(out)
    }

    /// The cone spanned by the generators at the given positions.
    pub fn sub_cone(&self, indices: &[usize]) -> Cone {
        Cone::new(self.ambient_rank, indices.iter().map(|&i| self.generators[i].clone()).collect())
    }

    /// Whether some strictly positive combination of the generators lies in
    /// the real span of `l`.
    pub fn relint_meets_subspace(&self, l: &Sublattice) -> Result<bool> {
        if l.ambient_rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: l.ambient_rank() });
        }
        let k = self.generators.len();
        if k == 0 {
            return Ok(true);
        }
        // q annihilates L; need λ > 0 with q·(Σ λ_i g_i) = 0
        let q = if l.rank() == 0 { IntegerMatrix::identity(self.ambient_rank) } else { kernel_basis(l.basis()).basis().clone() };
        let gmat = IntegerMatrix::from_rows(self.ambient_rank, &self.generators).transpose();
        let a = q.mul(&gmat)?;
        let nonneg: Vec<Vec<BigInt>> = IntegerMatrix::identity(k).to_rows();
        let (rays, lin) = double_description(k, &nonneg, &a.to_rows());
        debug_assert!(lin.is_empty());
        let mut sum = vec![BigInt::zero(); k];
        for r in &rays {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        Ok(sum.iter().all(|x| x.is_positive()))
    }

    /// Image under a linear map given as a `target × ambient` matrix.
    pub fn image(&self, f: &IntegerMatrix) -> Result<Cone> {
        if f.cols() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: f.cols() });
        }
        let gens = self.generators.iter().map(|g| f.mul_vec(g)).collect::<Result<Vec<_>>>()?;
        Ok(Cone::new(f.rows(), gens))
    }
}

/// Extreme rays and a lineality basis of `{x : A x ≥ 0, E x = 0}` by the
/// double description method with an exact adjacency test.
pub fn double_description(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lin: Vec<Vec<BigInt>> = if eqs.is_empty() {
        IntegerMatrix::identity(dim).to_rows()
    } else {
        kernel_basis(&IntegerMatrix::from_rows(dim, eqs)).basis_rows()
    };
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = eqs.iter().filter(|e| e.iter().any(|x| !x.is_zero())).cloned().collect();

    for a in ineqs {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(pos);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot(a, &l0);
            let project = |v: &Vec<BigInt>| -> Vec<BigInt> {
                let av = dot(a, v);
                primitive(&v.iter().zip(&l0).map(|(x, y)| &al0 * x - &av * y).collect::<Vec<_>>())
            };
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(&l0));
            dedup_rays(&mut rays);
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            let mut next: Vec<Vec<BigInt>> =
                rays.iter().zip(&vals).filter(|(_, v)| !v.is_negative()).map(|(r, _)| r.clone()).collect();
            let target = dim - lin.len();
            for (i, p) in rays.iter().enumerate() {
                if !vals[i].is_positive() {
                    continue;
                }
                for (j, n) in rays.iter().enumerate() {
                    if !vals[j].is_negative() {
                        continue;
                    }
                    if target >= 2 && adjacent(p, n, &processed, target - 2) {
                        let v: Vec<BigInt> = n.iter().zip(p).map(|(x, y)| &vals[i] * x - &vals[j] * y).collect();
                        next.push(primitive(&v));
                    }
                }
            }
            rays = next;
            dedup_rays(&mut rays);
        }
        processed.push(a.clone());
    }
    (rays, lin)
}

fn adjacent(p: &[BigInt], n: &[BigInt], constraints: &[Vec<BigInt>], needed: usize) -> bool {
    let tight: Vec<Vec<BigInt>> =
        constraints.iter().filter(|c| dot(c, p).is_zero() && dot(c, n).is_zero()).cloned().collect();
    if tight.len() < needed {
        return false;
    }
    rank_of(&tight, p.len()) == needed
}

fn dedup_rays(rays: &mut Vec<Vec<BigInt>>) {
    rays.retain(|r| r.iter().any(|x| !x.is_zero()));
    rays.sort();
    rays.dedup();
}
