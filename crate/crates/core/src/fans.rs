//! Systems of fans: the cones `σ_f` of a conical ring, separatedness and the
//! gluing relation on labelled faces.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::grading::{ConicalRing, GradedPolyRing, Monomial};
use crate::lattice::{IntegerMatrix, Sublattice};

/// One maximal cone of a system, spanned by rays of the global ray list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalCone {
    pub label: String,
    /// The ring generator this cone belongs to, for ring-derived systems.
    pub monomial: Option<Monomial>,
    /// Indices into [`SystemOfFans::rays`], increasing.
    pub rays: Vec<usize>,
    pub cone: Cone,
}

/// An indexed family of simplicial maximal cones with pairwise overlap fans.
///
/// `rays` lists one entry per variable, so a ray vector shared by duplicated
/// charts appears several times. Overlaps not listed are the trivial fan
/// `{{0}}`; each listed overlap is given by the maximal cones of `Δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemOfFans {
    pub ambient_rank: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub cones: Vec<MaximalCone>,
    pub overlaps: BTreeMap<(usize, usize), Vec<Cone>>,
}

/// A class of the gluing relation: the common face and every labelled copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingClass {
    pub face: Cone,
    /// `(cone index, ray indices of the face)`; the first entry is the representative.
    pub members: Vec<(usize, Vec<usize>)>,
}

/// The gluing classes with their partial order, given as all pairs `(a, b)`
/// of class indices with `a ⪯ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingData {
    pub classes: Vec<GluingClass>,
    pub order: Vec<(usize, usize)>,
}

impl GluingData {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.contains(&(a, b))
    }

    pub fn class_of(&self, cone: usize, face_rays: &[usize]) -> Option<usize> {
        self.classes.iter().position(|c| c.members.iter().any(|(i, f)| *i == cone && f == face_rays))
    }
}

/// Cone spanned by the basis columns outside `support`.
pub fn sigma_over_support(m_basis: &Sublattice, support: &[usize]) -> Cone {
    let cols = m_basis.basis().to_columns();
    let gens: Vec<Vec<BigInt>> = (0..cols.len()).filter(|i| !support.contains(i)).map(|i| cols[i].clone()).collect();
    Cone::new(m_basis.rank(), gens)
}

/// `σ_f` for a relevant generator `f ∈ Gen^D(S)`.
pub fn sigma_f(ring: &GradedPolyRing, m_basis: &Sublattice, f: &Monomial) -> Result<Cone> {
    check_basis(ring, m_basis)?;
    let support = f.support();
    let is_gen = f.len() == ring.n()
        && f.is_squarefree()
        && support.len() == ring.rank()
        && ring.is_relevant_support(&support);
    if !is_gen {
        return Err(Error::NotAGenerator(ring.format_monomial(f)));
    }
    Ok(sigma_over_support(m_basis, &support))
}

fn check_basis(ring: &GradedPolyRing, m_basis: &Sublattice) -> Result<()> {
    if m_basis.ambient_rank() != ring.n() {
        return Err(Error::DimensionMismatch { expected: ring.n(), found: m_basis.ambient_rank() });
    }
    if m_basis.rank() != ring.dual_rank() {
        return Err(Error::DimensionMismatch { expected: ring.dual_rank(), found: m_basis.rank() });
    }
    if !m_basis.lattice_eq(&ring.grading_kernel()) {
        return Err(Error::InvalidDegree("basis does not span the grading kernel".into()));
    }
    Ok(())
}

/// The affine system `𝒮_B`: one cone per element of `Gen^D_B(S)`, trivial overlaps.
pub fn build_system(conical: &ConicalRing, m_basis: Option<&Sublattice>) -> Result<SystemOfFans> {
    let ring = conical.ring();
    let default_basis;
    let basis = match m_basis {
        Some(b) => b,
        None => {
            default_basis = ring.grading_kernel();
            &default_basis
        }
    };
    check_basis(ring, basis)?;
    let n = ring.n();
    let rays = basis.basis().to_columns();
    let mut cones = Vec::new();
    for f in conical.relevant_in_b() {
        let support = f.support();
        let cone = if f.is_squarefree() && support.len() == ring.rank() {
            sigma_f(ring, basis, &f)?
        } else {
            sigma_over_support(basis, &support)
        };
        let idx: Vec<usize> = (0..n).filter(|i| !support.contains(i)).collect();
        cones.push(MaximalCone { label: ring.format_monomial(&f), monomial: Some(f), rays: idx, cone });
    }
    Ok(SystemOfFans { ambient_rank: basis.rank(), rays, cones, overlaps: BTreeMap::new() })
}

impl SystemOfFans {
    /// Builds a system from cones given by their ray vectors.
    ///
    /// With `rays = None` the ray list is derived from the cones: a ray vector
    /// gets as many variables as the most frequent set-equal cone containing
    /// it. Repeated copies of a cone use successive copies of their rays.
    pub fn from_cones(
        ambient_rank: usize,
        cones: Vec<(String, Vec<Vec<BigInt>>)>,
        rays: Option<Vec<Vec<BigInt>>>,
        overlaps: BTreeMap<(usize, usize), Vec<Cone>>,
    ) -> Result<SystemOfFans> {
        for (_, rs) in &cones {
            if let Some(r) = rs.iter().find(|r| r.len() != ambient_rank) {
                return Err(Error::DimensionMismatch { expected: ambient_rank, found: r.len() });
            }
        }
        // occurrence number of each cone among set-equal copies
        let built: Vec<Cone> = cones.iter().map(|(_, rs)| Cone::new(ambient_rank, rs.clone())).collect();
        let occurrence: Vec<usize> = (0..cones.len()).map(|i| (0..i).filter(|&j| built[j].set_eq(&built[i])).count()).collect();

        let rays = match rays {
            Some(r) => {
                if let Some(v) = r.iter().find(|v| v.len() != ambient_rank) {
                    return Err(Error::DimensionMismatch { expected: ambient_rank, found: v.len() });
                }
                r
            }
            None => {
                let mut list: Vec<Vec<BigInt>> = Vec::new();
                for (i, (_, rs)) in cones.iter().enumerate() {
                    for r in rs {
                        let have = list.iter().filter(|v| *v == r).count();
                        if have <= occurrence[i] {
                            for _ in have..=occurrence[i] {
                                list.push(r.clone());
                            }
                        }
                    }
                }
                list
            }
        };

        let mut out = Vec::new();
        for (i, (label, rs)) in cones.into_iter().enumerate() {
            let mut idx = Vec::new();
            for r in &rs {
                let copies: Vec<usize> = (0..rays.len()).filter(|&k| &rays[k] == r).collect();
                let Some(&last) = copies.last() else {
                    return Err(Error::UnknownRay(format!("{r:?}")));
                };
                idx.push(*copies.get(occurrence[i]).unwrap_or(&last));
            }
            idx.sort();
            idx.dedup();
            out.push(MaximalCone { label, monomial: None, rays: idx, cone: built[i].clone() });
        }
        Ok(SystemOfFans { ambient_rank, rays, cones: out, overlaps })
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// The ray matrix `ℬ`: one row per variable.
    pub fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.ambient_rank, &self.rays)
    }

    /// Cones of the fan `Δ_ij` (all faces of the listed maximal cones).
    pub fn overlap_fan(&self, i: usize, j: usize) -> Vec<Cone> {
        let maximal: Vec<Cone> = if i == j {
            vec![self.cones[i].cone.clone()]
        } else {
            self.overlaps.get(&(i, j)).or_else(|| self.overlaps.get(&(j, i))).cloned().unwrap_or_default()
        };
        let mut out = vec![Cone::zero(self.ambient_rank)];
        for c in maximal {
            for f in all_faces(&c) {
                if !out.iter().any(|o| o.set_eq(&f)) {
                    out.push(f);
                }
            }
        }
        out
    }

    fn stated_overlap(&self, i: usize, j: usize) -> Vec<Cone> {
        let maximal = self.overlaps.get(&(i, j)).cloned().unwrap_or_default();
        let mut out = vec![Cone::zero(self.ambient_rank)];
        for c in maximal {
            for f in all_faces(&c) {
                if !out.iter().any(|o| o.set_eq(&f)) {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Checks the defining conditions and strict convexity.
    pub fn validate(&self) -> Result<()> {
        let k = self.cones.len();
        for (i, c) in self.cones.iter().enumerate() {
            if !c.cone.is_strictly_convex() {
                return Err(Error::InvalidSystem(format!("cone {} ({}) is not strictly convex", i, c.label)));
            }
            if c.rays.iter().any(|&r| r >= self.rays.len()) {
                return Err(Error::InvalidSystem(format!("cone {i} references a missing ray")));
            }
        }
        for &(i, j) in self.overlaps.keys() {
            if i >= k || j >= k {
                return Err(Error::InvalidSystem(format!("overlap ({i},{j}) names a missing cone")));
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let a = self.stated_overlap(i, j);
                let b = self.stated_overlap(j, i);
                let listed_both = self.overlaps.contains_key(&(i, j)) && self.overlaps.contains_key(&(j, i));
                if listed_both && !same_fan(&a, &b) {
                    return Err(Error::InvalidSystem(format!("overlap ({i},{j}) differs from ({j},{i})")));
                }
                for t in self.overlap_fan(i, j) {
                    if !t.is_face_of(&self.cones[i].cone) || !t.is_face_of(&self.cones[j].cone) {
                        return Err(Error::InvalidSystem(format!("overlap ({i},{j}) contains {t}, not a common face")));
                    }
                }
            }
        }
        for (i, j, l) in (0..k).cartesian_product(0..k).cartesian_product(0..k).map(|((a, b), c)| (a, b, c)) {
            if i == j && j == l {
                continue;
            }
            let target = self.overlap_fan(i, l);
            for a in self.overlap_fan(i, j) {
                for b in self.overlap_fan(j, l) {
                    let m = a.intersect(&b)?;
                    if !target.iter().any(|t| t.set_eq(&m)) {
                        return Err(Error::InvalidSystem(format!(
                            "triple ({i},{j},{l}): {m} lies in both overlaps but not in overlap ({i},{l})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether every pair of maximal cones meets exactly in the face spanned
    /// by their shared rays, i.e. the system collapses to one fan.
    pub fn is_fan(&self) -> bool {
        (0..self.cones.len()).tuple_combinations().all(|(i, j)| self.pair_collapses(i, j))
    }

    fn pair_collapses(&self, i: usize, j: usize) -> bool {
        let a = &self.cones[i];
        let b = &self.cones[j];
        let shared: Vec<Vec<BigInt>> =
            a.rays.iter().filter(|r| b.rays.contains(r)).map(|&r| self.rays[r].clone()).collect();
        let face = Cone::new(self.ambient_rank, shared);
        a.cone.intersect(&b.cone).map(|c| c.set_eq(&face)).unwrap_or(false)
    }

    /// Pairs of cone indices that are not glued along their intersection.
    pub fn non_separated_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.cones.len()).tuple_combinations().filter(|&(i, j)| !self.pair_collapses(i, j)).collect()
    }

    /// Partition of labelled faces `(τ, i)` under `(τ,i) ~ (τ,j) ⟺ τ ∈ Δ_ij`.
    pub fn gluing_classes(&self) -> Result<GluingData> {
        let mut labelled: Vec<(usize, Vec<usize>, Cone)> = Vec::new();
        for (i, c) in self.cones.iter().enumerate() {
            if !c.cone.is_simplicial() || c.rays.len() != c.cone.dim() {
                return Err(Error::NotSimplicial);
            }
            for size in 0..=c.rays.len() {
                for subset in c.rays.iter().copied().combinations(size) {
                    let face = Cone::new(self.ambient_rank, subset.iter().map(|&r| self.rays[r].clone()).collect());
                    labelled.push((i, subset, face));
                }
            }
        }
        let mut parent: Vec<usize> = (0..labelled.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let overlap: BTreeMap<(usize, usize), Vec<Cone>> = (0..self.cones.len())
            .tuple_combinations()
            .map(|(i, j)| ((i, j), self.overlap_fan(i, j)))
            .collect();
        for a in 0..labelled.len() {
            for b in a + 1..labelled.len() {
                let (i, _, ref ta) = labelled[a];
                let (j, _, ref tb) = labelled[b];
                if i == j || !ta.set_eq(tb) {
                    continue;
                }
                let key = (i.min(j), i.max(j));
                if overlap[&key].iter().any(|t| t.set_eq(ta)) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[rb.max(ra)] = ra.min(rb);
                    }
                }
            }
        }
        let mut root_to_class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut classes: Vec<GluingClass> = Vec::new();
        let mut class_of = vec![0; labelled.len()];
        for (x, (i, rays, face)) in labelled.iter().enumerate() {
            let r = find(&mut parent, x);
            let c = *root_to_class.entry(r).or_insert_with(|| {
                classes.push(GluingClass { face: face.clone(), members: Vec::new() });
                classes.len() - 1
            });
            classes[c].members.push((*i, rays.clone()));
            class_of[x] = c;
        }
        // [τ,j] ⪯ [σ,i] iff τ ⪯ σ and [τ,i] = [τ,j]
        let mut order: Vec<(usize, usize)> = Vec::new();
        for (x, (i, sr, _)) in labelled.iter().enumerate() {
            for (y, (i2, tr, _)) in labelled.iter().enumerate() {
                if i == i2 && tr.iter().all(|r| sr.contains(r)) {
                    order.push((class_of[y], class_of[x]));
                }
            }
        }
        order.sort();
        order.dedup();
        Ok(GluingData { classes, order })
    }
}

fn all_faces(c: &Cone) -> Vec<Cone> {
    c.faces().unwrap_or_else(|_| vec![Cone::zero(c.ambient_rank()), c.clone()])
}

fn same_fan(a: &[Cone], b: &[Cone]) -> bool {
    a.iter().all(|x| b.iter().any(|y| x.set_eq(y))) && b.iter().all(|x| a.iter().any(|y| x.set_eq(y)))
}

/// Checks the conditions of a system of fans; the error names the first violation.
pub fn validate_system(s: &SystemOfFans) -> Result<()> {
    s.validate()
}

/// `(full-dimensional weight-cone intersection, σ_f ∩ σ_g not full-dimensional)`.
pub fn pair_separation(ring: &GradedPolyRing, m_basis: &Sublattice, f: &Monomial, g: &Monomial) -> Result<(bool, bool)> {
    let sf = sigma_f(ring, m_basis, f)?;
    let sg = sigma_f(ring, m_basis, g)?;
    let weight = ring.weight_cone(f)?.intersect(&ring.weight_cone(g)?)?.full_dimensional();
    let sigma = !sf.intersect(&sg)?.full_dimensional();
    Ok((weight, sigma))
}

/// Whether `Proj^D_B(S)` is separated: every pair of charts is glued along
/// the whole intersection of its cones.
pub fn is_separated(conical: &ConicalRing) -> Result<bool> {
    Ok(build_system(conical, None)?.is_fan())
}
