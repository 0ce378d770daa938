//! Seeded random instances for property tests and the acceptance harness.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::grading::{ConicalRing, Degree, FgAbGroup, GradedPolyRing, Monomial};
use crate::lattice::{cokernel_presentation, IntegerMatrix, Sublattice};
use crate::maps::{regrade, GroupHom, RingMorphism};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct GradingParams {
    pub max_n: usize,
    pub max_rank: usize,
    pub torsion: bool,
    pub entry_bound: i64,
}

impl Default for GradingParams {
    fn default() -> Self {
        GradingParams { max_n: 7, max_rank: 3, torsion: true, entry_bound: 2 }
    }
}

/// An effective grading with `n ≤ max_n` variables and free rank `r ≤ max_rank`.
pub fn random_ring<R: Rng>(rng: &mut R, p: GradingParams) -> GradedPolyRing {
    loop {
        let r = rng.gen_range(1..=p.max_rank);
        if r + 1 > p.max_n {
            continue;
        }
        let n = rng.gen_range(r + 1..=p.max_n);
        let orders: Vec<i64> = if p.torsion && rng.gen_bool(0.3) { vec![rng.gen_range(2..=3)] } else { vec![] };
        let torsion: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        let group = match FgAbGroup::new(r, torsion) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let degrees: Vec<Degree> = (0..n)
            .map(|_| {
                let free = (0..r).map(|_| BigInt::from(rng.gen_range(-p.entry_bound..=p.entry_bound))).collect();
                let tors = orders.iter().map(|&d| BigInt::from(rng.gen_range(0..d))).collect();
                Degree::new(free, tors)
            })
            .collect();
        if let Ok(ring) = GradedPolyRing::new(group, degrees, None) {
            if !ring.generators_irrelevant().is_empty() {
                return ring;
            }
        }
    }
}

/// A conical ring whose `B` is a random nonempty subset of `Gen(S)`.
pub fn random_conical<R: Rng>(rng: &mut R, p: GradingParams) -> ConicalRing {
    let ring = random_ring(rng, p);
    let gens = ring.generators_irrelevant();
    let mut b: Vec<Monomial> = gens.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    if b.is_empty() {
        b.push(gens.choose(rng).expect("nonempty").clone());
    }
    crate::grading::validate_conical(&ring, b).expect("generators of S_+ lie in S_+")
}

/// A morphism into a random target: random monomial images, and the source
/// graded by `Z^m / K` for a random sublattice `K` of the relations among
/// the images' degrees, so that `α` is well defined by construction.
pub fn random_morphism<R: Rng>(rng: &mut R, p: GradingParams) -> Result<RingMorphism> {
    let target = random_ring(rng, p);
    let n = target.n();
    let m = rng.gen_range(2..=p.max_n.max(2));
    let images: Vec<Monomial> = (0..m)
        .map(|_| loop {
            let e: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.35) { rng.gen_range(1..=2) } else { 0 }).collect();
            let mono = Monomial::new(e);
            if !mono.is_one() || rng.gen_bool(0.1) {
                break mono;
            }
        })
        .collect();
    let (image_ring, _) = regrade(&target, &images)?;
    let relations = image_ring.grading_kernel();
    let mut kept: Vec<Vec<BigInt>> = Vec::new();
    for row in relations.basis_rows() {
        if rng.gen_bool(0.7) {
            let c = BigInt::from(rng.gen_range(1..=2));
            kept.push(row.into_iter().map(|x| x * &c).collect());
        }
    }
    let k = Sublattice::from_generators(m, &kept)?;
    let pres = cokernel_presentation(&IntegerMatrix::from_columns(m, &k.basis_rows()));
    let mut degrees = Vec::with_capacity(m);
    for j in 0..m {
        let mut v = vec![BigInt::from(0); m];
        v[j] = BigInt::from(1);
        degrees.push(pres.project(&v)?);
    }
    let source = GradedPolyRing::new(pres.group.clone(), degrees, None)?;
    let e = IntegerMatrix::from_columns(n, &images.iter().map(|g| g.exponent_vector()).collect::<Vec<_>>());
    let alpha_images = pres.lift.to_columns().iter().map(|c| target.gamma(&e.mul_vec(c)?)).collect::<Result<Vec<_>>>()?;
    let alpha = GroupHom::new(pres.group, target.group().clone(), alpha_images)?;
    RingMorphism::new(source, target, images, alpha)
}
