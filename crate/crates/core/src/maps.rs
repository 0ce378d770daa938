//! Monomial morphisms of graded rings, their relevance classification,
//! rational maps of conical rings and the induced maps of systems of fans.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::cones::{double_description, Cone};
use crate::error::{Error, Result};
use crate::fans::{build_system, sigma_over_support, SystemOfFans};
use crate::grading::{default_names, minimalize, ConicalRing, Degree, FgAbGroup, GradedPolyRing, Monomial};
use crate::lattice::{cokernel_presentation, kernel_basis, IntegerMatrix, Sublattice};

/// A homomorphism of finitely generated abelian groups, given by the images
/// of the source generators (free generators first, then torsion generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    images: Vec<Degree>,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, images: Vec<Degree>) -> Result<GroupHom> {
        if images.len() != source.num_generators() {
            return Err(Error::InvalidHom(format!(
                "expected {} generator images, found {}",
                source.num_generators(),
                images.len()
            )));
        }
        let mut reduced = Vec::with_capacity(images.len());
        for d in images {
            if d.free.len() != target.free_rank() || d.torsion.len() != target.torsion().len() {
                return Err(Error::InvalidHom("image has the wrong shape for the target group".into()));
            }
            reduced.push(target.reduce(d));
        }
        for (j, dj) in source.torsion().iter().enumerate() {
            let img = &reduced[source.free_rank() + j];
            if !target.scale(img, dj).is_zero() {
                return Err(Error::InvalidHom(format!("torsion generator of order {dj} maps to an element of other order")));
            }
        }
        Ok(GroupHom { source, target, images: reduced })
    }

    /// From a matrix on flat coordinates (`target gens × source gens`).
    pub fn from_matrix(source: FgAbGroup, target: FgAbGroup, m: &IntegerMatrix) -> Result<GroupHom> {
        if m.cols() != source.num_generators() || m.rows() != target.num_generators() {
            return Err(Error::InvalidHom("matrix shape does not match the groups".into()));
        }
        let images = m.to_columns().iter().map(|c| target.degree_from_flat(c)).collect::<Result<Vec<_>>>()?;
        GroupHom::new(source, target, images)
    }

    pub fn identity(g: &FgAbGroup) -> GroupHom {
        let images = (0..g.num_generators()).map(|k| g.generator(k)).collect();
        GroupHom { source: g.clone(), target: g.clone(), images }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[Degree] {
        &self.images
    }

    pub fn matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_columns(self.target.num_generators(), &self.images.iter().map(|d| d.to_flat()).collect::<Vec<_>>())
    }

    pub fn apply(&self, d: &Degree) -> Degree {
        let mut acc = self.target.zero();
        for (x, img) in d.to_flat().iter().zip(&self.images) {
            if !x.is_zero() {
                acc = self.target.add(&acc, &self.target.scale(img, x));
            }
        }
        acc
    }

    /// Surjectivity: the images together with the target relations generate.
    pub fn is_surjective(&self) -> bool {
        let k = self.target.num_generators();
        let r = self.target.free_rank();
        let mut cols: Vec<Vec<BigInt>> = self.images.iter().map(|d| d.to_flat()).collect();
        for (j, d) in self.target.torsion().iter().enumerate() {
            let mut c = vec![BigInt::zero(); k];
            c[r + j] = d.clone();
            cols.push(c);
        }
        cokernel_presentation(&IntegerMatrix::from_columns(k, &cols)).group.is_trivial()
    }
}

pub fn alpha_surjective(alpha: &GroupHom) -> bool {
    alpha.is_surjective()
}

/// A morphism `φ: R → S` sending each variable to a monomial, with its
/// grading homomorphism `α_φ: D_R → D_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    source: GradedPolyRing,
    target: GradedPolyRing,
    images: Vec<Monomial>,
    alpha: GroupHom,
}

impl RingMorphism {
    /// Checks shapes only; use [`check_morphism`] for degree compatibility.
    pub fn new(source: GradedPolyRing, target: GradedPolyRing, images: Vec<Monomial>, alpha: GroupHom) -> Result<Self> {
        if images.len() != source.n() {
            return Err(Error::InvalidMap(format!("expected {} variable images, found {}", source.n(), images.len())));
        }
        if let Some(m) = images.iter().find(|m| m.len() != target.n()) {
            return Err(Error::InvalidMap(format!("image has {} exponents, target has {} variables", m.len(), target.n())));
        }
        if alpha.source() != source.group() || alpha.target() != target.group() {
            return Err(Error::InvalidHom("alpha does not connect the two grading groups".into()));
        }
        Ok(RingMorphism { source, target, images, alpha })
    }

    pub fn identity(ring: &GradedPolyRing) -> RingMorphism {
        let n = ring.n();
        RingMorphism {
            source: ring.clone(),
            target: ring.clone(),
            images: (0..n).map(|i| Monomial::var(n, i)).collect(),
            alpha: GroupHom::identity(ring.group()),
        }
    }

    pub fn source(&self) -> &GradedPolyRing {
        &self.source
    }

    pub fn target(&self) -> &GradedPolyRing {
        &self.target
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    /// `E: Z^{n_R} → Z^{n_S}`, column `j` the exponent vector of `φ(T_j)`.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let cols: Vec<Vec<BigInt>> = self.images.iter().map(|m| m.exponent_vector()).collect();
        IntegerMatrix::from_columns(self.target.n(), &cols)
    }

    pub fn apply(&self, m: &Monomial) -> Monomial {
        let mut out = Monomial::one(self.target.n());
        for (e, img) in m.exponents().iter().zip(&self.images) {
            out = out.mul(&img.pow(*e));
        }
        out
    }
}

/// `deg_S(φ(T_i)) = α(deg_R(T_i))` for every variable.
pub fn check_morphism(phi: &RingMorphism) -> Result<()> {
    for (i, (d, img)) in phi.source.degrees().iter().zip(&phi.images).enumerate() {
        if phi.target.degree_of(img)? != phi.alpha.apply(d) {
            return Err(Error::IncompatibleDegree(i));
        }
    }
    Ok(())
}

/// The subring `C[gens] ⊆ S` regraded by the subgroup of `D_S` its generators
/// span: new variables `U_j ↦ gens[j]`, group `Z^m / M'` with
/// `M' = {x : γ_S(E x) = 0}`, and the inclusion `D' → D_S`.
pub fn regrade(ring: &GradedPolyRing, gens: &[Monomial]) -> Result<(GradedPolyRing, GroupHom)> {
    let n = ring.n();
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: g.len() });
    }
    let m = gens.len();
    let e = IntegerMatrix::from_columns(n, &gens.iter().map(|g| g.exponent_vector()).collect::<Vec<_>>());
    let gamma = ring.gamma_matrix();
    let r = ring.rank();
    let t = ring.group().torsion().len();
    let head = gamma.select_cols(&(0..n).collect::<Vec<_>>()).mul(&e)?;
    let tail = gamma.select_cols(&(n..n + t).collect::<Vec<_>>());
    let stacked = head.hstack(&tail);
    debug_assert_eq!(stacked.rows(), r + t);
    let k = kernel_basis(&stacked);
    let rows: Vec<Vec<BigInt>> = k.basis_rows().into_iter().map(|row| row[..m].to_vec()).collect();
    let m_prime = Sublattice::from_generators(m, &rows)?;
    let pres = cokernel_presentation(&IntegerMatrix::from_columns(m, &m_prime.basis_rows()));
    let mut degrees = Vec::with_capacity(m);
    for j in 0..m {
        let mut v = vec![BigInt::zero(); m];
        v[j] = BigInt::from(1);
        degrees.push(pres.project(&v)?);
    }
    let sub = GradedPolyRing::new(pres.group.clone(), degrees, Some(default_names(m)))?;
    let mut images = Vec::new();
    for col in pres.lift.to_columns() {
        images.push(ring.gamma(&e.mul_vec(&col)?)?);
    }
    let incl = GroupHom::new(pres.group, ring.group().clone(), images)?;
    Ok((sub, incl))
}

/// `S_(f) = S_(g)`: the cones over the two supports agree.
pub fn localization_equal(ring: &GradedPolyRing, f: &Monomial, g: &Monomial) -> bool {
    let k = ring.grading_kernel();
    sigma_over_support(&k, &f.support()).set_eq(&sigma_over_support(&k, &g.support()))
}

/// `{m ∈ M_R : m_i ≥ 0 for i ∉ support}` pushed into `Z^n` through `map`
/// (the identity when `None`), where `basis` has the rows of a basis of `M`.
fn chart_cone(basis: &Sublattice, map: Option<&IntegerMatrix>, support: &[usize]) -> Result<Cone> {
    let k = basis.rank();
    let cols = basis.basis().to_columns();
    let ineqs: Vec<Vec<BigInt>> = (0..cols.len()).filter(|i| !support.contains(i)).map(|i| cols[i].clone()).collect();
    let (rays, lin) = double_description(k, &ineqs, &[]);
    let mut gens: Vec<Vec<BigInt>> = rays;
    for l in lin {
        gens.push(l.iter().map(|x| -x).collect());
        gens.push(l);
    }
    let bt = basis.basis().transpose();
    let out_dim = map.map_or(basis.ambient_rank(), |e| e.rows());
    let mut image = Vec::with_capacity(gens.len());
    for c in gens {
        let v = bt.mul_vec(&c)?;
        image.push(match map {
            Some(e) => e.mul_vec(&v)?,
            None => v,
        });
    }
    Ok(Cone::new(out_dim, image))
}

/// Whether the chart of `C[gens]` at `sub_gen` (an exponent vector over the
/// generators) equals the chart of `S` at `target_support`.
fn charts_agree(
    ring: &GradedPolyRing,
    gens: &[Monomial],
    sub: &GradedPolyRing,
    sub_support: &[usize],
    target_support: &[usize],
) -> Result<bool> {
    let n = ring.n();
    let e = IntegerMatrix::from_columns(n, &gens.iter().map(|g| g.exponent_vector()).collect::<Vec<_>>());
    let m_s = ring.grading_kernel();
    let m_sub = sub.grading_kernel();
    let pushed: Vec<Vec<BigInt>> = m_sub.basis_rows().iter().map(|b| e.mul_vec(b)).collect::<Result<_>>()?;
    if !Sublattice::from_generators(n, &pushed)?.lattice_eq(&m_s) {
        return Ok(false);
    }
    let a = chart_cone(&m_sub, Some(&e), sub_support)?;
    let b = chart_cone(&m_s, None, target_support)?;
    Ok(a.set_eq(&b))
}

/// Whether `C[gens]`, regraded, has relevant elements inside `rad(B)` whose
/// charts agree with the charts of `S`, and covers every chart of `(S, B)`.
pub fn subring_realizes(conical: &ConicalRing, gens: &[Monomial]) -> Result<bool> {
    let ring = conical.ring();
    let (sub, _) = match regrade(ring, gens) {
        Ok(x) => x,
        Err(Error::IneffectiveGrading) => return Ok(false),
        Err(e) => return Err(e),
    };
    let sub_gens = sub.generators_irrelevant();
    let phi_img = |g: &Monomial| -> Monomial {
        let mut out = Monomial::one(ring.n());
        for (e, m) in g.exponents().iter().zip(gens) {
            out = out.mul(&m.pow(*e));
        }
        out
    };
    for g in &sub_gens {
        let h = phi_img(g);
        if !conical.in_b_radical(&h.support()) {
            return Ok(false);
        }
        if !charts_agree(ring, gens, &sub, &g.support(), &h.support())? {
            return Ok(false);
        }
    }
    for b in conical.relevant_in_b() {
        let mut found = false;
        for g in &sub_gens {
            if charts_agree(ring, gens, &sub, &g.support(), &b.support())? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `m` is a product of elements of `gens`.
pub fn in_semigroup(m: &Monomial, gens: &[Monomial]) -> bool {
    fn go(m: &Monomial, gens: &[Monomial], memo: &mut std::collections::HashMap<Monomial, bool>) -> bool {
        if m.is_one() {
            return true;
        }
        if let Some(&v) = memo.get(m) {
            return v;
        }
        let mut ok = false;
        for g in gens {
            if g.is_one() {
                continue;
            }
            if let Some(rest) = m.div(g) {
                if go(&rest, gens, memo) {
                    ok = true;
                    break;
                }
            }
        }
        memo.insert(m.clone(), ok);
        ok
    }
    go(m, gens, &mut Default::default())
}

/// Drops generators that are products of the others.
fn minimal_generating_set(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = gens.iter().unique().cloned().collect();
    out.sort_by_key(|m| std::cmp::Reverse((m.total_degree(), m.clone())));
    let mut i = 0;
    while i < out.len() {
        let others: Vec<Monomial> = out.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m.clone()).collect();
        if in_semigroup(&out[i], &others) {
            out.remove(i);
        } else {
            i += 1;
        }
    }
    out.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| b.cmp(a)));
    out
}

fn monomials_up_to(n: usize, bound: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u32;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out.retain(|m| !m.is_one());
    out.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| b.cmp(a)));
    out
}

/// Generators of a subring `S'` with `S'_+ = B` chart by chart.
///
/// Subsets `K` of variables are tried from largest to smallest. The first
/// candidate for `K` is `K ∪ {b ∈ B : supp b ⊄ K}`; if no `K` works, elements
/// of `B` up to the degree bound are added greedily and pruned again.
pub fn subring_for_b(conical: &ConicalRing, degree_bound: Option<u64>) -> Result<Vec<Monomial>> {
    let ring = conical.ring();
    let n = ring.n();
    let full_supports: Vec<Vec<usize>> = ring.generators_irrelevant().iter().map(|g| g.support()).collect();
    if full_supports.iter().all(|s| conical.in_b_radical(s)) {
        return Ok((0..n).map(|i| Monomial::var(n, i)).collect());
    }
    let bound = degree_bound.unwrap_or_else(|| 2 * conical.b_generators().iter().map(|b| b.total_degree()).max().unwrap_or(1));
    let subsets: Vec<Vec<usize>> = (0..=n).rev().flat_map(|size| (0..n).combinations(size)).collect();
    let base_for = |k: &[usize]| -> Vec<Monomial> {
        let mut gens: Vec<Monomial> = k.iter().map(|&i| Monomial::var(n, i)).collect();
        for b in conical.b_generators() {
            if !b.support().iter().all(|i| k.contains(i)) && b.total_degree() <= bound {
                gens.push(b.clone());
            }
        }
        gens
    };
    for k in &subsets {
        let gens = base_for(k);
        if !gens.is_empty() && subring_realizes(conical, &gens)? {
            return Ok(minimal_generating_set(&gens));
        }
    }
    let pool: Vec<Monomial> = monomials_up_to(n, bound).into_iter().filter(|m| conical.in_b(m)).collect();
    for k in &subsets {
        let mut gens = base_for(k);
        let start = gens.len();
        for m in &pool {
            if in_semigroup(m, &gens) {
                continue;
            }
            gens.push(m.clone());
            if subring_realizes(conical, &gens)? {
                let mut i = gens.len();
                while i > start {
                    i -= 1;
                    let mut trial = gens.clone();
                    trial.remove(i);
                    if subring_realizes(conical, &trial)? {
                        gens = trial;
                    }
                }
                return Ok(minimal_generating_set(&gens));
            }
        }
    }
    Err(Error::InvalidMap(format!("no subring realizes B with generators of degree at most {bound}")))
}

/// The relevance data of a morphism, computed on generic generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `φ(g)` for `g ∈ Gen_{B_R}(R)` that are relevant in `S` and lie in `B_S`.
    pub rel_locus: Vec<Monomial>,
    /// `Gen(S) ∩ φ(Gen(R))`.
    pub gen_locus: Vec<Monomial>,
    /// `g ∈ Gen_{B_R}(R)` with `φ(g)` relevant in the regraded image `φ(R)`.
    pub rat_locus: Vec<Monomial>,
    /// `φ` is surjective, equivalently `Rel(S) ⊆ φ(Rel(R))`.
    pub is_relevant: bool,
    /// Every relevant element of `B_R` maps to a relevant element of `S`.
    pub is_rationally_relevant: bool,
    /// Every relevant element of `B_R` has a relevant `f ∈ B_S` with
    /// `φ(g) | f` and `S_(f) = S_(φ(g))`.
    pub is_rational: bool,
    /// Every relevant element of `R` maps to a relevant element of `S`.
    pub maps_relevant_to_relevant: bool,
    pub alpha_surjective: bool,
    /// Every relevant element of `R` stays relevant in `φ(R)`.
    pub relevant_onto_image: bool,
    /// Squarefree `g ∈ R`, not relevant, with `φ(g) ∈ Rel(φ)`.
    pub preimage_violations: Vec<Monomial>,
}

fn support_superset_rational(conical: &ConicalRing, support: &[usize]) -> Option<Vec<usize>> {
    let ring = conical.ring();
    let n = ring.n();
    let k = ring.grading_kernel();
    let base = sigma_over_support(&k, support);
    let rest: Vec<usize> = (0..n).filter(|i| !support.contains(i)).collect();
    for size in 0..=rest.len() {
        for extra in rest.iter().copied().combinations(size) {
            let mut f: Vec<usize> = support.iter().copied().chain(extra).collect();
            f.sort();
            if ring.is_relevant_support(&f) && conical.in_b_radical(&f) && sigma_over_support(&k, &f).set_eq(&base) {
                return Some(f);
            }
        }
    }
    None
}

/// A relevant `f ∈ B_S` with `image | f` and `S_(f) = S_(image)`, if any.
pub fn rational_witness(target: &ConicalRing, image: &Monomial) -> Option<Monomial> {
    let f = support_superset_rational(target, &image.support())?;
    let n = target.ring().n();
    let mut m = image.mul(&Monomial::from_support(n, &f));
    // raise until the ideal B itself contains it
    let step = Monomial::from_support(n, &f);
    for _ in 0..64 {
        if target.in_b(&m) {
            return Some(m);
        }
        m = m.mul(&step);
    }
    None
}

pub fn classify(phi: &RingMorphism, b_r: &ConicalRing, b_s: &ConicalRing) -> Result<Classification> {
    if b_r.ring() != phi.source() || b_s.ring() != phi.target() {
        return Err(Error::InvalidMap("conical structures do not match the morphism's rings".into()));
    }
    check_morphism(phi)?;
    let s = phi.target();
    let r = phi.source();
    let gen_r = r.generators_irrelevant();
    let gen_s = s.generators_irrelevant();
    let rel_b_r = b_r.relevant_in_b();
    let (image_ring, _) = regrade(s, phi.images())?;

    let mut rel_locus = Vec::new();
    let mut rat_locus = Vec::new();
    let mut rationally_relevant = true;
    let mut rational = true;
    for g in &rel_b_r {
        let img = phi.apply(g);
        let relevant_in_s = s.is_relevant(&img)?;
        if relevant_in_s && b_s.in_b(&img) {
            rel_locus.push(img.clone());
        }
        if !relevant_in_s {
            rationally_relevant = false;
        }
        if image_ring.is_relevant_support(&g.support()) {
            rat_locus.push(g.clone());
        }
        if rational_witness(b_s, &img).is_none() {
            rational = false;
        }
    }
    let mut gen_locus: Vec<Monomial> = gen_r.iter().map(|g| phi.apply(g)).filter(|m| gen_s.contains(m)).collect();
    gen_locus.sort();
    gen_locus.dedup();
    rel_locus.sort();
    rel_locus.dedup();

    let maps_relevant_to_relevant = gen_r.iter().all(|g| s.is_relevant(&phi.apply(g)).unwrap_or(false));
    let relevant_onto_image = gen_r.iter().all(|g| image_ring.is_relevant_support(&g.support()));
    let n_s = s.n();
    let is_relevant = (0..n_s).all(|j| phi.images().contains(&Monomial::var(n_s, j)));

    let mut preimage_violations = Vec::new();
    if r.n() <= 12 {
        let gen_images: Vec<Monomial> = gen_r.iter().map(|g| phi.apply(g)).filter(|m| s.is_relevant(m).unwrap_or(false)).collect();
        for size in 0..=r.n() {
            for sup in (0..r.n()).combinations(size) {
                let g = Monomial::from_support(r.n(), &sup);
                if r.is_relevant_support(&sup) {
                    continue;
                }
                if gen_images.contains(&phi.apply(&g)) {
                    preimage_violations.push(g);
                }
            }
        }
    }

    Ok(Classification {
        rel_locus,
        gen_locus,
        rat_locus,
        is_relevant,
        is_rationally_relevant: rationally_relevant,
        is_rational: rational,
        maps_relevant_to_relevant,
        alpha_surjective: phi.alpha().is_surjective(),
        relevant_onto_image,
        preimage_violations,
    })
}

/// A rational map of conical rings: the underlying morphism plus, for each
/// relevant `g ∈ B_R`, the chosen `f_g ∈ B_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalConeMap {
    pub source: ConicalRing,
    pub target: ConicalRing,
    pub morphism: RingMorphism,
    pub choices: Vec<(Monomial, Monomial)>,
}

impl RationalConeMap {
    pub fn choice_for(&self, g: &Monomial) -> Option<&Monomial> {
        self.choices.iter().find(|(h, _)| h == g).map(|(_, f)| f)
    }
}

/// Divisibility, membership and localization equality for every chosen
/// `f_g`, plus existence of the local maps `M_{J_g} → M_{J_{f_g}}`.
pub fn validate_rational_map(rmap: &RationalConeMap) -> Result<()> {
    let phi = &rmap.morphism;
    if rmap.source.ring() != phi.source() || rmap.target.ring() != phi.target() {
        return Err(Error::InvalidMap("conical structures do not match the morphism's rings".into()));
    }
    check_morphism(phi)?;
    let s = phi.target();
    let r = phi.source();
    let e = phi.exponent_matrix();
    let m_r = r.grading_kernel();
    let m_s = s.grading_kernel();
    for b in m_r.basis_rows() {
        if !m_s.contains(&e.mul_vec(&b)?) {
            return Err(Error::KernelNotPreserved);
        }
    }
    for g in rmap.source.relevant_in_b() {
        let name = r.format_monomial(&g);
        let f = rmap.choice_for(&g).ok_or_else(|| Error::InvalidMap(format!("no f chosen for {name}")))?;
        let img = phi.apply(&g);
        if !img.divides(f) {
            return Err(Error::InvalidMap(format!("image of {name} does not divide {}", s.format_monomial(f))));
        }
        if !rmap.target.in_b(f) || !s.is_relevant(f)? {
            return Err(Error::InvalidMap(format!("{} is not a relevant element of B_S", s.format_monomial(f))));
        }
        if !localization_equal(s, f, &img) {
            return Err(Error::InvalidMap(format!("localizations at {} and at the image of {name} differ", s.format_monomial(f))));
        }
        let src = chart_cone(&m_r, Some(&e), &g.support())?;
        let dst = chart_cone(&m_s, None, &f.support())?;
        if !dst.contains_cone(&src) {
            return Err(Error::InvalidMap(format!("no local map on the chart of {name}")));
        }
    }
    Ok(())
}

/// A lattice map between the `N` lattices plus the map on maximal cones,
/// given as pairs `(source cone, target cone)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanMap {
    pub matrix: IntegerMatrix,
    pub class_map: Vec<(usize, usize)>,
}

/// The map `N_S → N_R` dual to `E: M_R → M_S` in the canonical kernel bases,
/// sending the cone of each chart `S_(f_g)` to the cone of `g`.
/// Returns the fan map with the two systems `(𝒮_{B_S}, 𝒮_{B_R})`.
pub fn induced_fan_map(rmap: &RationalConeMap) -> Result<(FanMap, SystemOfFans, SystemOfFans)> {
    let phi = &rmap.morphism;
    let r = phi.source();
    let s = phi.target();
    let e = phi.exponent_matrix();
    let m_r = r.grading_kernel();
    let m_s = s.grading_kernel();
    let mut rows = Vec::with_capacity(m_r.rank());
    for b in m_r.basis_rows() {
        let img = e.mul_vec(&b)?;
        rows.push(m_s.coordinates(&img).ok_or(Error::KernelNotPreserved)?);
    }
    let matrix = IntegerMatrix::from_rows(m_s.rank(), &rows);
    let sys_r = build_system(&rmap.source, Some(&m_r))?;
    let sys_s = build_system(&rmap.target, Some(&m_s))?;
    let mut class_map = Vec::new();
    for (si, sc) in sys_s.cones.iter().enumerate() {
        let f = sc.monomial.as_ref().expect("ring-derived system");
        let mut hit = None;
        for (ri, rc) in sys_r.cones.iter().enumerate() {
            let g = rc.monomial.as_ref().expect("ring-derived system");
            let Some(fg) = rmap.choice_for(g) else { continue };
            if localization_equal(s, f, fg) {
                hit = Some(ri);
                if fg == f {
                    break;
                }
            }
        }
        if let Some(ri) = hit {
            class_map.push((si, ri));
        }
    }
    Ok((FanMap { matrix, class_map }, sys_s, sys_r))
}

/// A labelled face `(cone, ray indices)` of the source system together with
/// the face of the assigned target cone whose interior contains its image.
pub type FaceImage = ((usize, Vec<usize>), (usize, Vec<usize>));

/// Images of all labelled faces of the mapped cones. A cone whose image is
/// not contained in its assigned target cone is an error.
pub fn face_images(fm: &FanMap, source: &SystemOfFans, target: &SystemOfFans) -> Result<Vec<FaceImage>> {
    if fm.matrix.cols() != source.ambient_rank || fm.matrix.rows() != target.ambient_rank {
        return Err(Error::InvalidMap("lattice map has the wrong shape".into()));
    }
    let mut out = Vec::new();
    for &(si, ti) in &fm.class_map {
        let sc = source.cones.get(si).ok_or_else(|| Error::InvalidMap(format!("no source cone {si}")))?;
        let tc = target.cones.get(ti).ok_or_else(|| Error::InvalidMap(format!("no target cone {ti}")))?;
        if !tc.cone.contains_cone(&sc.cone.image(&fm.matrix)?) {
            return Err(Error::InvalidMap(format!("{} is not mapped into {}", sc.label, tc.label)));
        }
        for size in 0..=sc.rays.len() {
            for sub in sc.rays.iter().copied().combinations(size) {
                let mut acc = vec![BigInt::zero(); source.ambient_rank];
                for &r in &sub {
                    for (a, b) in acc.iter_mut().zip(&source.rays[r]) {
                        *a += b;
                    }
                }
                let q = fm.matrix.mul_vec(&acc)?;
                let target_face = tc
                    .rays
                    .iter()
                    .copied()
                    .powerset()
                    .find(|tf| Cone::new(target.ambient_rank, tf.iter().map(|&r| target.rays[r].clone()).collect()).in_relint(&q))
                    .ok_or_else(|| Error::InvalidMap(format!("a face of {} has no image face", sc.label)))?;
                out.push(((si, sub), (ti, target_face)));
            }
        }
    }
    Ok(out)
}

/// Condition (ii) (each face's interior lands in the interior of a face of
/// the assigned cone) plus order preservation on glued faces.
pub fn validate_fan_map(fm: &FanMap, source: &SystemOfFans, target: &SystemOfFans) -> Result<()> {
    let images = face_images(fm, source, target)?;
    let sg = source.gluing_classes()?;
    let tg = target.gluing_classes()?;
    let classes: Vec<(Option<usize>, Option<usize>)> =
        images.iter().map(|((c, f), (tc, tf))| (sg.class_of(*c, f), tg.class_of(*tc, tf))).collect();
    for (ca, ta) in &classes {
        for (cb, tb) in &classes {
            let (Some(x), Some(y)) = (ca, cb) else { continue };
            if x == y && ta != tb {
                return Err(Error::InvalidMap("glued faces map to different classes".into()));
            }
            if sg.leq(*x, *y) {
                if let (Some(tx), Some(ty)) = (ta, tb) {
                    if !tg.leq(*tx, *ty) {
                        return Err(Error::InvalidMap("face order is not preserved".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Supports of the minimal radicals among `ms`.
pub fn minimal_supports(ms: &[Monomial]) -> Vec<Vec<usize>> {
    let rad: Vec<Monomial> = ms.iter().map(|m| m.radical()).collect();
    minimalize(&rad).iter().map(|m| m.support()).collect()
}
