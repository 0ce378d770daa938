//! From rays back to a grading: `𝒜` with `𝒜ℬ = 0`, the irrelevant subset
//! `B_𝒜`, and both roundtrips between rings and systems of fans.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fans::{build_system, SystemOfFans};
use crate::grading::{minimalize, validate_conical, ConicalRing, Degree, FgAbGroup, GradedPolyRing, Monomial};
use crate::lattice::{cokernel_presentation, hnf, image_membership, IntegerMatrix, Sublattice};

/// `ℬ`: one row per variable, the ray generator of that variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayMatrix {
    matrix: IntegerMatrix,
}

impl RayMatrix {
    pub fn new(matrix: IntegerMatrix) -> Self {
        RayMatrix { matrix }
    }

    pub fn from_rows(rank: usize, rows: &[Vec<BigInt>]) -> Self {
        RayMatrix { matrix: IntegerMatrix::from_rows(rank, rows) }
    }

    pub fn of_system(s: &SystemOfFans) -> Self {
        RayMatrix { matrix: s.ray_matrix() }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.matrix.cols()
    }
}

/// `D = coker(ℬ: Z^{n−r} → Z^n)` and the classes of the standard basis
/// vectors. The free part of the degree matrix is brought to Hermite normal
/// form, which only changes coordinates on `D`.
pub fn grading_from_rays(rays: &RayMatrix) -> Result<(FgAbGroup, Vec<Degree>)> {
    let b = rays.matrix();
    if b.rank() != b.cols() {
        return Err(Error::RankDeficient);
    }
    let pres = cokernel_presentation(b);
    let n = b.rows();
    let mut degrees = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[i] = BigInt::from(1);
        degrees.push(pres.project(&e)?);
    }
    let r = pres.group.free_rank();
    if r > 0 {
        let free_cols: Vec<Vec<BigInt>> = degrees.iter().map(|d| d.free.clone()).collect();
        let (h, _) = hnf(&IntegerMatrix::from_columns(r, &free_cols));
        for (i, d) in degrees.iter_mut().enumerate() {
            d.free = h.col(i);
        }
    }
    Ok((pres.group, degrees))
}

/// The ring `C[T_ρ]` graded by [`grading_from_rays`].
pub fn ring_from_rays(rays: &RayMatrix) -> Result<GradedPolyRing> {
    let (group, degrees) = grading_from_rays(rays)?;
    GradedPolyRing::new(group, degrees, None)
}

/// For each maximal cone the product of the variables whose rays it omits.
pub fn irrelevant_from_cones(s: &SystemOfFans, rays: &RayMatrix) -> Result<Vec<Monomial>> {
    let rows = rays.matrix().to_rows();
    let n = rows.len();
    let mut out = Vec::new();
    for c in &s.cones {
        let mut used = vec![false; n];
        for &r in &c.rays {
            let v = s.rays.get(r).ok_or_else(|| Error::UnknownRay(format!("index {r}")))?;
            let k = if rows.get(r) == Some(v) {
                r
            } else {
                rows.iter().position(|row| row == v).ok_or_else(|| Error::UnknownRay(format!("{v:?}")))?
            };
            used[k] = true;
        }
        let support: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        out.push(Monomial::from_support(n, &support));
    }
    Ok(out)
}

/// Outcome of a roundtrip check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub ok: bool,
    /// Matrix of the group isomorphism on flat coordinates (free, then torsion),
    /// sending the original degrees to the recovered ones.
    pub automorphism: Option<IntegerMatrix>,
    pub messages: Vec<String>,
}

/// An isomorphism `ψ: D_a → D_b` with `ψ(deg_a T_i) = deg_b T_i` for all `i`,
/// if one exists. Both gradings are effective, so this happens exactly when
/// the grading kernels agree.
pub fn degree_automorphism(a: &GradedPolyRing, b: &GradedPolyRing) -> Option<IntegerMatrix> {
    if a.n() != b.n() || a.group() != b.group() {
        return None;
    }
    if !a.grading_kernel().lattice_eq(&b.grading_kernel()) {
        return None;
    }
    let gamma = a.gamma_matrix();
    let k = a.group().num_generators();
    let n = a.n();
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let target = a.group().generator(j).to_flat();
        let x = image_membership(&gamma, &target).ok()??;
        cols.push(b.gamma(&x[..n]).ok()?.to_flat());
    }
    let psi = IntegerMatrix::from_columns(b.group().num_generators(), &cols);
    for (da, db) in a.degrees().iter().zip(b.degrees()) {
        let img = b.group().degree_from_flat(&psi.mul_vec(&da.to_flat()).ok()?).ok()?;
        if &img != db {
            return None;
        }
    }
    Some(psi)
}

fn radicals(ms: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = minimalize(&ms.iter().map(|m| m.radical()).collect::<Vec<_>>());
    v.sort();
    v
}

/// Ring → system → ring: the recovered grading must agree with the original
/// up to an automorphism of `D`, and `B_𝒜` with the radicals of `Gen^D_B(S)`.
pub fn roundtrip_ring(conical: &ConicalRing, m_basis: Option<&Sublattice>) -> Result<RoundtripReport> {
    let sys = build_system(conical, m_basis)?;
    let rays = RayMatrix::of_system(&sys);
    let mut messages = Vec::new();
    let recovered = match ring_from_rays(&rays) {
        Ok(r) => r,
        Err(e) => {
            messages.push(format!("recovered grading rejected: {e}"));
            return Ok(RoundtripReport { ok: false, automorphism: None, messages });
        }
    };
    let original = conical.ring();
    if recovered.group() != original.group() {
        messages.push(format!("group {} recovered as {}", original.group(), recovered.group()));
    }
    let automorphism = degree_automorphism(original, &recovered);
    if automorphism.is_none() {
        messages.push("no automorphism of D matches the degrees".into());
    }
    let b = irrelevant_from_cones(&sys, &rays)?;
    if radicals(&b) != radicals(&conical.relevant_in_b()) {
        messages.push("recovered irrelevant generators differ".into());
    }
    Ok(RoundtripReport { ok: messages.is_empty(), automorphism, messages })
}

/// System → ring → system, with the kernel basis given by the columns of `ℬ`
/// so that rays are identified with themselves.
pub fn roundtrip_fan(s: &SystemOfFans) -> Result<RoundtripReport> {
    for c in &s.cones {
        if !c.cone.is_simplicial() || c.rays.len() != c.cone.dim() {
            return Err(Error::NotSimplicial);
        }
    }
    let rays = RayMatrix::of_system(s);
    if rays.matrix().rank() != s.ambient_rank {
        return Err(Error::RaysDoNotSpan);
    }
    let mut messages = Vec::new();
    let ring = ring_from_rays(&rays)?;
    let b = irrelevant_from_cones(s, &rays)?;
    let conical = match validate_conical(&ring, b) {
        Ok(c) => c,
        Err(e) => {
            messages.push(format!("recovered irrelevant subset rejected: {e}"));
            return Ok(RoundtripReport { ok: false, automorphism: None, messages });
        }
    };
    let basis = Sublattice::with_basis(ring.n(), &rays.matrix().to_columns())?;
    let rebuilt = build_system(&conical, Some(&basis))?;
    if rebuilt.rays != s.rays {
        messages.push("ray identification changed".into());
    }
    let mut unmatched: Vec<usize> = (0..rebuilt.cones.len()).collect();
    for c in &s.cones {
        match unmatched.iter().position(|&k| rebuilt.cones[k].rays == c.rays && rebuilt.cones[k].cone.set_eq(&c.cone)) {
            Some(p) => {
                unmatched.remove(p);
            }
            None => messages.push(format!("cone {} not recovered", c.label)),
        }
    }
    if !unmatched.is_empty() {
        messages.push(format!("{} extra cones recovered", unmatched.len()));
    }
    Ok(RoundtripReport { ok: messages.is_empty(), automorphism: Some(IntegerMatrix::identity(s.ambient_rank)), messages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ints;
    use std::collections::BTreeMap;

    fn rays(rows: &[Vec<i64>]) -> RayMatrix {
        RayMatrix::new(IntegerMatrix::from_i64(rows))
    }

    #[test]
    fn projective_plane() {
        let (g, d) = grading_from_rays(&rays(&[vec![1, 0], vec![0, 1], vec![-1, -1]])).unwrap();
        assert_eq!(g, FgAbGroup::free(1));
        assert!(d.iter().all(|x| x.free == ints(&[1])));
    }

    #[test]
    fn four_rays() {
        let r = rays(&[vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 1]]);
        let ring = ring_from_rays(&r).unwrap();
        assert_eq!(ring.group(), &FgAbGroup::free(2));
        let expected = GradedPolyRing::from_free_columns(2, &[vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1]], None).unwrap();
        assert!(degree_automorphism(&expected, &ring).is_some());
    }

    #[test]
    fn non_simplicial_square() {
        let r = rays(&[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]]);
        let ring = ring_from_rays(&r).unwrap();
        assert_eq!(ring.group(), &FgAbGroup::new(1, ints(&[2])).unwrap());
        let g = ring.group().clone();
        let expected = GradedPolyRing::new(
            g,
            vec![
                Degree::new(ints(&[-1]), ints(&[1])),
                Degree::new(ints(&[1]), ints(&[0])),
                Degree::new(ints(&[-1]), ints(&[1])),
                Degree::new(ints(&[1]), ints(&[0])),
            ],
            None,
        )
        .unwrap();
        assert!(degree_automorphism(&expected, &ring).is_some());
    }

    #[test]
    fn rank_deficient() {
        assert_eq!(grading_from_rays(&rays(&[vec![1, 1], vec![2, 2]])), Err(Error::RankDeficient));
    }

    #[test]
    fn irrelevant_monomials() {
        let e = |v: &[i64]| ints(v);
        let cones = vec![
            ("a".into(), vec![e(&[0, 1]), e(&[-1, -1])]),
            ("b".into(), vec![e(&[1, 0]), e(&[-1, -1])]),
            ("c".into(), vec![e(&[1, 0]), e(&[0, 1])]),
        ];
        let all = vec![e(&[1, 0]), e(&[0, 1]), e(&[-1, -1]), e(&[1, 1])];
        let sys = SystemOfFans::from_cones(2, cones, Some(all), BTreeMap::new()).unwrap();
        let r = RayMatrix::of_system(&sys);
        let b = irrelevant_from_cones(&sys, &r).unwrap();
        let names: Vec<String> = b.iter().map(|m| crate::grading::format_monomial(&crate::grading::default_names(4), m)).collect();
        assert_eq!(names, vec!["xw", "yw", "zw"]);
        assert!(roundtrip_fan(&sys).unwrap().ok);
    }

    #[test]
    fn roundtrips() {
        let s = GradedPolyRing::from_free_columns(2, &[vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1]], None).unwrap();
        let b: Vec<Monomial> = ["xz", "yz", "xw", "yw"].iter().map(|m| s.parse_monomial(m).unwrap()).collect();
        let c = validate_conical(&s, b).unwrap();
        assert!(roundtrip_ring(&c, None).unwrap().ok);
        let sys = build_system(&c, None).unwrap();
        assert!(roundtrip_fan(&sys).unwrap().ok);
        let p1 = GradedPolyRing::from_free_columns(1, &[vec![1], vec![2]], None).unwrap();
        let c = validate_conical(&p1, vec![p1.parse_monomial("y").unwrap()]).unwrap();
        assert!(roundtrip_ring(&c, None).unwrap().ok);
    }
}
