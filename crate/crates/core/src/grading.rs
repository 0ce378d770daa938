//! Finitely generated abelian groups, multigraded polynomial rings, weight
//! cones, relevance and the irrelevant ideal.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{cokernel_presentation, kernel_basis, IntegerMatrix, Sublattice};

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with `d_1 | d_2 | …` and every `d_j ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (j, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::InvalidGroup(format!("torsion factor {d} is smaller than 2")));
            }
            if j > 0 && !d.is_multiple_of(&torsion[j - 1]) {
                return Err(Error::InvalidGroup(format!("{} does not divide {d}", torsion[j - 1])));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn zero(&self) -> Degree {
        Degree { free: vec![BigInt::zero(); self.free_rank], torsion: vec![BigInt::zero(); self.torsion.len()] }
    }

    /// The `k`-th generator: free basis vectors first, then torsion generators.
    pub fn generator(&self, k: usize) -> Degree {
        let mut d = self.zero();
        if k < self.free_rank {
            d.free[k] = BigInt::one();
        } else {
            d.torsion[k - self.free_rank] = BigInt::one();
        }
        d
    }

    /// Reduces torsion coordinates into `[0, d_j)`.
    pub fn reduce(&self, mut d: Degree) -> Degree {
        for (x, m) in d.torsion.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(m);
        }
        d
    }

    pub fn check(&self, d: &Degree) -> Result<()> {
        if d.free.len() != self.free_rank || d.torsion.len() != self.torsion.len() {
            return Err(Error::InvalidDegree(format!(
                "expected {} free and {} torsion coordinates",
                self.free_rank,
                self.torsion.len()
            )));
        }
        for (x, m) in d.torsion.iter().zip(&self.torsion) {
            if x.is_negative() || x >= m {
                return Err(Error::InvalidDegree(format!("torsion residue {x} is not reduced modulo {m}")));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion = a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect();
        self.reduce(Degree { free, torsion })
    }

    pub fn scale(&self, a: &Degree, k: &BigInt) -> Degree {
        let free = a.free.iter().map(|x| x * k).collect();
        let torsion = a.torsion.iter().map(|x| x * k).collect();
        self.reduce(Degree { free, torsion })
    }

    /// Splits a flat `[free…, torsion…]` vector and reduces it.
    pub fn degree_from_flat(&self, v: &[BigInt]) -> Result<Degree> {
        if v.len() != self.num_generators() {
            return Err(Error::DimensionMismatch { expected: self.num_generators(), found: v.len() });
        }
        Ok(self.reduce(Degree { free: v[..self.free_rank].to_vec(), torsion: v[self.free_rank..].to_vec() }))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element of an [`FgAbGroup`]: free coordinates plus torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl Degree {
    pub fn new(free: Vec<BigInt>, torsion: Vec<BigInt>) -> Self {
        Degree { free, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|x| x.is_zero())
    }

    pub fn to_flat(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().map(|x| format!("{x}~")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A monomial `T_1^{e_1} ⋯ T_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn from_support(n: usize, support: &[usize]) -> Self {
        let mut m = Self::one(n);
        for &i in support {
            m.exps[i] = 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn radical(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&e| e.min(1)).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|a| a * k).collect() }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() })
    }

    pub fn exponent_vector(&self) -> Vec<BigInt> {
        self.exps.iter().map(|&e| BigInt::from(e)).collect()
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Removes duplicates and every element divisible by another element.
pub fn minimalize(monomials: &[Monomial]) -> Vec<Monomial> {
    let uniq: BTreeSet<Monomial> = monomials.iter().cloned().collect();
    let uniq: Vec<Monomial> = uniq.into_iter().collect();
    uniq.iter().filter(|m| !uniq.iter().any(|o| o != *m && o.divides(m))).cloned().collect()
}

fn sort_by_support(v: &mut [Monomial]) {
    v.sort_by(|a, b| a.support().cmp(&b.support()).then_with(|| a.cmp(b)));
}

/// `C[T_1, …, T_n]` graded by an [`FgAbGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolyRing {
    group: FgAbGroup,
    degrees: Vec<Degree>,
    names: Vec<String>,
}

impl GradedPolyRing {
    /// Validates the degrees and checks that the grading is effective.
    pub fn new(group: FgAbGroup, degrees: Vec<Degree>, names: Option<Vec<String>>) -> Result<Self> {
        for d in &degrees {
            group.check(d)?;
        }
        let n = degrees.len();
        let names = match names {
            Some(names) => {
                if names.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: names.len() });
                }
                names
            }
            None => default_names(n),
        };
        let ring = GradedPolyRing { group, degrees, names };
        if !cokernel_presentation(&ring.gamma_matrix()).group.is_trivial() {
            return Err(Error::IneffectiveGrading);
        }
        Ok(ring)
    }

    /// Free grading by the columns of an integer matrix (rows = group coordinates).
    pub fn from_free_columns(rank: usize, columns: &[Vec<i64>], names: Option<Vec<String>>) -> Result<Self> {
        let degrees = columns.iter().map(|c| Degree::new(c.iter().map(|&x| BigInt::from(x)).collect(), vec![])).collect();
        Self::new(FgAbGroup::free(rank), degrees, names)
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The map `γ` with torsion relations appended as extra columns:
    /// `[free rows | 0 ; torsion rows | diag(d_j)]`.
    pub fn gamma_matrix(&self) -> IntegerMatrix {
        let r = self.group.free_rank();
        let t = self.group.torsion().len();
        let n = self.n();
        let mut m = IntegerMatrix::zeros(r + t, n + t);
        for (i, d) in self.degrees.iter().enumerate() {
            for (k, x) in d.free.iter().enumerate() {
                m.set(k, i, x.clone());
            }
            for (j, x) in d.torsion.iter().enumerate() {
                m.set(r + j, i, x.clone());
            }
        }
        for (j, dj) in self.group.torsion().iter().enumerate() {
            m.set(r + j, n + j, dj.clone());
        }
        m
    }

    /// `γ(v) = Σ v_i deg(T_i)` for an arbitrary integer vector.
    pub fn gamma(&self, v: &[BigInt]) -> Result<Degree> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: v.len() });
        }
        let mut acc = self.group.zero();
        for (vi, d) in v.iter().zip(&self.degrees) {
            if !vi.is_zero() {
                acc = self.group.add(&acc, &self.group.scale(d, vi));
            }
        }
        Ok(acc)
    }

    pub fn degree_of(&self, m: &Monomial) -> Result<Degree> {
        self.gamma(&m.exponent_vector())
    }

    fn check_len(&self, m: &Monomial) -> Result<()> {
        if m.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: m.len() });
        }
        Ok(())
    }

    /// Cone in `D_R` spanned by the free parts of the degrees on the support.
    pub fn weight_cone(&self, m: &Monomial) -> Result<Cone> {
        self.check_len(m)?;
        Ok(self.support_cone(&m.support()))
    }

    pub(crate) fn support_cone(&self, support: &[usize]) -> Cone {
        let gens = support.iter().map(|&i| self.degrees[i].free.clone()).collect();
        Cone::new(self.rank(), gens)
    }

    pub fn is_relevant(&self, m: &Monomial) -> Result<bool> {
        self.check_len(m)?;
        Ok(self.is_relevant_support(&m.support()))
    }

    pub fn is_relevant_support(&self, support: &[usize]) -> bool {
        let gens: Vec<Vec<BigInt>> = support.iter().map(|&i| self.degrees[i].free.clone()).collect();
        crate::lattice::rank_of(&gens, self.rank()) == self.rank() && self.support_cone(support).full_dimensional()
    }

    /// `Gen^D(S)`: squarefree monomials on exactly `r` variables with a
    /// full-dimensional weight cone, sorted by support.
    pub fn generators_irrelevant(&self) -> Vec<Monomial> {
        let r = self.rank();
        (0..self.n())
            .combinations(r)
            .filter(|s| self.is_relevant_support(s))
            .map(|s| Monomial::from_support(self.n(), &s))
            .collect()
    }

    /// `M_S = ker γ`, including the torsion congruences. The basis is in
    /// Hermite normal form; its rank is `n − r`.
    pub fn grading_kernel(&self) -> Sublattice {
        let k = kernel_basis(&self.gamma_matrix());
        let n = self.n();
        let rows: Vec<Vec<BigInt>> = k.basis_rows().into_iter().map(|r| r[..n].to_vec()).collect();
        Sublattice::from_generators(n, &rows).expect("projected kernel rows")
    }

    /// Rank of `N_S`, the dual of `M_S`.
    pub fn dual_rank(&self) -> usize {
        self.n() - self.rank()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        format_monomial(&self.names, m)
    }

    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        parse_monomial(&self.names, s)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if n <= SHORT.len() {
        SHORT[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub fn format_monomial(names: &[String], m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let compact = names.iter().all(|s| s.chars().count() == 1);
    let factors: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
        .collect();
    factors.join(if compact { "" } else { "*" })
}

/// Parses `x*y^2`, `xy^2z` (single-letter names) or `1`.
pub fn parse_monomial(names: &[String], s: &str) -> Result<Monomial> {
    let n = names.len();
    let mut exps = vec![0u32; n];
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::new(exps));
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let bad = || Error::InvalidDegree(format!("cannot parse monomial '{s}'"));
    let factors: Vec<String> = if s.contains('*') {
        s.split('*').map(|f| f.trim().to_string()).collect()
    } else {
        // single-letter names written side by side
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut f = chars[i].to_string();
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                f.push('^');
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    f.push(chars[i]);
                    i += 1;
                }
            }
            out.push(f);
        }
        out
    };
    for f in factors {
        let (name, e) = match f.split_once('^') {
            Some((a, b)) => (a.trim().to_string(), b.trim().parse::<u32>().map_err(|_| bad())?),
            None => (f.clone(), 1),
        };
        let i = *index.get(name.as_str()).ok_or_else(bad)?;
        exps[i] += e;
    }
    Ok(Monomial::new(exps))
}

/// A graded ring together with monomial generators of an ideal `B ⊆ S_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicalRing {
    ring: GradedPolyRing,
    b_generators: Vec<Monomial>,
}

impl ConicalRing {
    pub fn ring(&self) -> &GradedPolyRing {
        &self.ring
    }

    pub fn b_generators(&self) -> &[Monomial] {
        &self.b_generators
    }

    /// The conical ring with `B = S_+`.
    pub fn full(ring: GradedPolyRing) -> Self {
        let b = ring.generators_irrelevant();
        ConicalRing { ring, b_generators: b }
    }

    pub fn in_b(&self, m: &Monomial) -> bool {
        self.b_generators.iter().any(|b| b.divides(m))
    }

    /// Some power of a monomial with this support lies in `B`.
    pub fn in_b_radical(&self, support: &[usize]) -> bool {
        self.b_generators.iter().any(|b| b.support().iter().all(|i| support.contains(i)))
    }

    /// `Gen^D_B(S)`: generators of `S_+` lying in `B` together with the relevant
    /// generators of `B`, minimalized under divisibility.
    pub fn relevant_in_b(&self) -> Vec<Monomial> {
        let mut cand: Vec<Monomial> = self.ring.generators_irrelevant().into_iter().filter(|g| self.in_b(g)).collect();
        for b in &self.b_generators {
            if self.ring.is_relevant_support(&b.support()) {
                cand.push(b.clone());
            }
        }
        let mut out = minimalize(&cand);
        sort_by_support(&mut out);
        out
    }

    /// Generators over `S_0` of a subring `S' ⊆ S` whose relevant elements
    /// recover `B` chart by chart. `degree_bound` caps the total degree of
    /// generators; `None` uses twice the largest total degree in `B`.
    pub fn subring_for_b(&self, degree_bound: Option<u64>) -> Result<Vec<Monomial>> {
        crate::maps::subring_for_b(self, degree_bound)
    }
}

/// Checks that every generator of `B` lies in `S_+`.
pub fn validate_conical(ring: &GradedPolyRing, b_generators: Vec<Monomial>) -> Result<ConicalRing> {
    let gens = ring.generators_irrelevant();
    for b in &b_generators {
        ring.check_len(b)?;
        if !gens.iter().any(|g| g.divides(b)) {
            return Err(Error::NotInIrrelevantIdeal(ring.format_monomial(b)));
        }
    }
    Ok(ConicalRing { ring: ring.clone(), b_generators })
}
