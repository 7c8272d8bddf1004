//! Symbolic calculus of pullback divisor classes `[φ]*D` on an abelian
//! variety with complex multiplication.
//!
//! For a symmetric base divisor `D`, the map `α ↦ [α]*D` into the divisor
//! class group is quadratic: writing `α = Σ n_k e_k` in the power basis,
//!
//! ```text
//! q(α) = Σ n_k²·q(e_k)  +  Σ_{k<l} n_k n_l·b(e_k, e_l)
//! ```
//!
//! over the formal generators `q(e_k)` (pullback along a basis element) and
//! `b(e_k, e_l)` (the polar bilinear symbol). Declaring a finite unit group
//! `U` with `[u]*D ~ D` turns every instance of that invariance into an
//! integer relation vector; the relation lattice and its saturation then
//! decide whether a candidate identity among pullbacks is forced for every
//! abelian variety carrying this data. Saturated (up-to-torsion) membership
//! is the working notion of linear equivalence, since the Néron–Severi
//! group of an abelian variety is torsion-free.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{self, Row};
use crate::rings::{self, RingElement, RingKind, RingSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalculusError {
    #[error("ring mismatch: context is over {expected}, element is over {got}")]
    RingMismatch { expected: RingKind, got: RingKind },
    #[error("unit set must contain -1 (the base divisor must be symmetric)")]
    MissingMinusOne,
    #[error("{element} is not a unit (norm {norm})")]
    NotAUnit { element: String, norm: BigInt },
    #[error(
        "unit set is not closed under multiplication: {left} * {right} = {product} is missing"
    )]
    NotClosed {
        left: String,
        right: String,
        product: String,
    },
    #[error("class vector has {got} coordinates, context has {expected} generators")]
    CoordinateCount { expected: usize, got: usize },
    #[error("zero argument where a nonzero endomorphism is required")]
    ZeroArgument,
    #[error("the {side} scalar is not derivable from the declared relations")]
    ScalarNotDerivable { side: &'static str },
    #[error(transparent)]
    Ring(#[from] rings::RingError),
}

/// A formal generator of the pullback class group: `q(e_k)` or `b(e_k, e_l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Q(usize),
    B(usize, usize),
}

fn basis_label(kind: RingKind, k: usize) -> String {
    let sym = kind.generator_symbol();
    match k {
        0 => "1".to_string(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

impl Generator {
    pub fn label(&self, kind: RingKind) -> String {
        match self {
            Generator::Q(k) => format!("q({})", basis_label(kind, *k)),
            Generator::B(k, l) => {
                format!("b({},{})", basis_label(kind, *k), basis_label(kind, *l))
            }
        }
    }
}

/// Integer coordinate vector of a divisor class over the generators of a
/// [`CalculusContext`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    ring: RingKind,
    coords: Vec<BigInt>,
}

impl ClassVector {
    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        lattice::row_is_zero(&self.coords)
    }

    pub fn add(&self, other: &ClassVector) -> ClassVector {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.coords.len(), other.coords.len());
        ClassVector {
            ring: self.ring,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassVector) -> ClassVector {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> ClassVector {
        ClassVector {
            ring: self.ring,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

/// Outcome of an identity check against the relation lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityVerdict {
    /// The difference lies in the relation lattice itself.
    Holds,
    /// The difference lies only in the saturation; `index` is the least
    /// `k >= 1` with `k * difference` in the lattice.
    HoldsUpToTorsion { index: u64 },
    /// Not a consequence of the declared relations for every abelian
    /// variety with this data. This is underivability, not falsity;
    /// falsity is only asserted through [`CalculusContext::refute_scalar_hypothesis`].
    NotDerivable,
}

impl IdentityVerdict {
    /// Membership in the saturated lattice, the working notion of `~`.
    pub fn holds_saturated(&self) -> bool {
        !matches!(self, IdentityVerdict::NotDerivable)
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, IdentityVerdict::Holds)
    }
}

impl fmt::Display for IdentityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityVerdict::Holds => write!(f, "holds"),
            IdentityVerdict::HoldsUpToTorsion { index } => {
                write!(f, "holds up to torsion (index {index})")
            }
            IdentityVerdict::NotDerivable => write!(f, "not derivable"),
        }
    }
}

/// Certificate refuting (or confirming) the hypothesis that `q(α) ~ a·q(1)`
/// for some integer `a >= 1`, given derivable scalars `s`, `t` with
/// `q(α) + q(β) ~ s·q(1)` and `q(αβ) ~ t·q(1)`. Composing pullbacks forces
/// `a(s - a) = t`; the certificate lists every integer solution `a >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationCertificate {
    pub sum_scalar: BigInt,
    pub product_scalar: BigInt,
    pub solutions: Vec<BigInt>,
}

impl RefutationCertificate {
    /// No admissible scalar exists: the hypothesis is refuted.
    pub fn is_refuted(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn equation(&self) -> String {
        format!("a*({} - a) = {}", self.sum_scalar, self.product_scalar)
    }
}

/// The relation lattice of a declared unit-invariance set, with everything
/// precomputed for membership, reduction and scalar solving. Immutable
/// after construction.
#[derive(Debug)]
pub struct CalculusContext {
    ring: RingSpec,
    units: Vec<RingElement>,
    generators: Vec<Generator>,
    relation_rows: Vec<Row>,
    hnf_strict: Vec<Row>,
    saturation_basis: Vec<Row>,
    /// Basis of the functionals vanishing on the saturation: an integer
    /// vector lies in the saturation iff it is orthogonal to every row.
    checks: Vec<Row>,
    elementary_divisors: Vec<BigInt>,
}

impl CalculusContext {
    /// Builds the context for a ring and a declared unit-invariance set.
    ///
    /// The unit set must contain `-1` (symmetry of the base divisor is what
    /// makes the pure quadratic model sound), consist of units, and be
    /// closed under negation and multiplication.
    pub fn build(
        ring: RingSpec,
        units: Vec<RingElement>,
    ) -> Result<CalculusContext, CalculusError> {
        let mut seen: Vec<RingElement> = Vec::new();
        for u in &units {
            if u.spec() != ring {
                return Err(CalculusError::RingMismatch {
                    expected: ring.kind(),
                    got: u.spec().kind(),
                });
            }
            let norm = u.norm();
            if !norm.abs().is_one() {
                return Err(CalculusError::NotAUnit {
                    element: u.to_string(),
                    norm,
                });
            }
            if !seen.contains(u) {
                seen.push(u.clone());
            }
        }
        let units = seen;
        let minus_one = RingElement::integer(ring, -1);
        if !units.contains(&minus_one) {
            return Err(CalculusError::MissingMinusOne);
        }
        for u in &units {
            if !units.contains(&u.neg()) {
                return Err(CalculusError::NotClosed {
                    left: minus_one.to_string(),
                    right: u.to_string(),
                    product: u.neg().to_string(),
                });
            }
            for v in &units {
                let p = u.mul(v)?;
                if !units.contains(&p) {
                    return Err(CalculusError::NotClosed {
                        left: u.to_string(),
                        right: v.to_string(),
                        product: p.to_string(),
                    });
                }
            }
        }

        let d = ring.degree();
        let mut generators = Vec::with_capacity(d + d * (d - 1) / 2);
        for k in 0..d {
            generators.push(Generator::Q(k));
        }
        for k in 0..d {
            for l in k + 1..d {
                generators.push(Generator::B(k, l));
            }
        }
        let n = generators.len();

        // One relation row per unit and generator: the pullback invariance
        // [u]*D ~ D expands to q(u·e_k) - q(e_k) and b(u·e_k, u·e_l) - b(e_k, e_l).
        let basis: Vec<RingElement> = (0..d)
            .map(|k| {
                let mut coeffs = vec![BigInt::zero(); d];
                coeffs[k] = BigInt::one();
                RingElement::new(ring, coeffs).unwrap()
            })
            .collect();

        let mut rows: Vec<Row> = Vec::new();
        for u in &units {
            for e in &basis {
                let mut row = expand_q(ring, &u.mul(e)?);
                let base = expand_q(ring, e);
                for (r, b) in row.iter_mut().zip(&base) {
                    *r -= b;
                }
                if !lattice::row_is_zero(&row) {
                    rows.push(row);
                }
            }
            for k in 0..d {
                for l in k + 1..d {
                    let mut row = expand_b(ring, &u.mul(&basis[k])?, &u.mul(&basis[l])?);
                    let base = expand_b(ring, &basis[k], &basis[l]);
                    for (r, b) in row.iter_mut().zip(&base) {
                        *r -= b;
                    }
                    if !lattice::row_is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }

        let hnf_strict = lattice::hnf(&rows, n);
        let saturation_basis = lattice::saturation(&rows, n);
        let checks = lattice::orthogonal_complement(&rows, n);
        let elementary_divisors = lattice::snf_diagonal(&rows, n);

        Ok(CalculusContext {
            ring,
            units,
            generators,
            relation_rows: rows,
            hnf_strict,
            saturation_basis,
            checks,
            elementary_divisors,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn units(&self) -> &[RingElement] {
        &self.units
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relation_rows(&self) -> &[Row] {
        &self.relation_rows
    }

    pub fn strict_basis(&self) -> &[Row] {
        &self.hnf_strict
    }

    pub fn saturation_basis(&self) -> &[Row] {
        &self.saturation_basis
    }

    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.elementary_divisors
    }

    /// Index of the saturation over the relation lattice (the order of the
    /// torsion group the saturation quotients away).
    pub fn torsion_index(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    fn check_element(&self, a: &RingElement) -> Result<(), CalculusError> {
        if a.spec() != self.ring {
            return Err(CalculusError::RingMismatch {
                expected: self.ring.kind(),
                got: a.spec().kind(),
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &ClassVector) -> Result<(), CalculusError> {
        if v.ring != self.ring.kind() {
            return Err(CalculusError::RingMismatch {
                expected: self.ring.kind(),
                got: v.ring,
            });
        }
        if v.coords.len() != self.generators.len() {
            return Err(CalculusError::CoordinateCount {
                expected: self.generators.len(),
                got: v.coords.len(),
            });
        }
        Ok(())
    }

    pub fn zero_vector(&self) -> ClassVector {
        ClassVector {
            ring: self.ring.kind(),
            coords: vec![BigInt::zero(); self.generators.len()],
        }
    }

    /// The generator coordinates of `[α]*D`, not yet reduced modulo the
    /// relation lattice.
    pub fn quadratic_normal_form(&self, alpha: &RingElement) -> Result<ClassVector, CalculusError> {
        self.check_element(alpha)?;
        Ok(ClassVector {
            ring: self.ring.kind(),
            coords: expand_q(self.ring, alpha),
        })
    }

    /// Canonical representative of a class vector modulo the saturated
    /// relation lattice. Two vectors are equivalent up to torsion iff their
    /// reductions are equal.
    pub fn reduce(&self, v: &ClassVector) -> Result<ClassVector, CalculusError> {
        self.check_vector(v)?;
        Ok(ClassVector {
            ring: v.ring,
            coords: lattice::reduce_mod(&self.saturation_basis, &v.coords),
        })
    }

    pub fn is_strict_member(&self, v: &ClassVector) -> Result<bool, CalculusError> {
        self.check_vector(v)?;
        Ok(lattice::contains(&self.hnf_strict, &v.coords))
    }

    pub fn is_saturated_member(&self, v: &ClassVector) -> Result<bool, CalculusError> {
        self.check_vector(v)?;
        Ok(self
            .checks
            .iter()
            .all(|k| lattice::dot(k, &v.coords).is_zero()))
    }

    /// Least `k >= 1` with `k * v` in the strict lattice, for `v` in the
    /// saturation. Divides the exponent of the torsion group.
    fn torsion_order(&self, v: &ClassVector) -> u64 {
        let exponent = self
            .elementary_divisors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one);
        let exponent = exponent.to_u64().unwrap_or(u64::MAX);
        for k in 1..=exponent {
            if exponent % k == 0 {
                let scaled = v.scale(&BigInt::from(k));
                if lattice::contains(&self.hnf_strict, &scaled.coords) {
                    return k;
                }
            }
        }
        exponent
    }

    /// Sum `Σ c_t · q(α_t)` of weighted pullback classes.
    pub fn combination(
        &self,
        terms: &[(BigInt, RingElement)],
    ) -> Result<ClassVector, CalculusError> {
        let mut acc = self.zero_vector();
        for (c, alpha) in terms {
            let q = self.quadratic_normal_form(alpha)?;
            acc = acc.add(&q.scale(c));
        }
        Ok(acc)
    }

    /// Decides `Σ lhs ~ Σ rhs`, where each pair `(c, α)` denotes `c·[α]*D`.
    pub fn verify(
        &self,
        lhs: &[(BigInt, RingElement)],
        rhs: &[(BigInt, RingElement)],
    ) -> Result<IdentityVerdict, CalculusError> {
        let diff = self.combination(lhs)?.sub(&self.combination(rhs)?);
        if self.is_strict_member(&diff)? {
            return Ok(IdentityVerdict::Holds);
        }
        if self.is_saturated_member(&diff)? {
            return Ok(IdentityVerdict::HoldsUpToTorsion {
                index: self.torsion_order(&diff),
            });
        }
        Ok(IdentityVerdict::NotDerivable)
    }

    /// The recurrence-based class vector of `[n+α]*D`:
    /// `n·q(1+α) - (n-1)·q(α) + n(n-1)·q(1)`.
    pub fn n_plus_alpha(&self, n: u64, alpha: &RingElement) -> Result<ClassVector, CalculusError> {
        self.check_element(alpha)?;
        let nb = BigInt::from(n);
        let one = RingElement::one(self.ring);
        let one_plus_alpha = one.add(alpha)?;
        let terms = [
            (nb.clone(), one_plus_alpha),
            (BigInt::one() - &nb, alpha.clone()),
            (&nb * (&nb - BigInt::one()), one),
        ];
        self.combination(&terms)
    }

    /// The unique integer `c` with `v ~ c·q(1)` up to torsion, if any.
    ///
    /// Solved through the orthogonal-complement functionals: `v - c·q(1)`
    /// lies in the saturation iff `v·k = c·(q(1)·k)` for every check row `k`.
    pub fn scalar_of(&self, v: &ClassVector) -> Result<Option<BigInt>, CalculusError> {
        self.check_vector(v)?;
        let mut pivot: Option<(BigInt, BigInt)> = None;
        for k in &self.checks {
            let wk = k[0].clone(); // q(1) is the first generator
            if !wk.is_zero() {
                pivot = Some((lattice::dot(k, &v.coords), wk));
                break;
            }
        }
        // q(1) inside the saturation would make every scalar work at once;
        // the unit invariances never produce that degeneracy.
        let Some((num, den)) = pivot else {
            return Ok(None);
        };
        if !(&num % &den).is_zero() {
            return Ok(None);
        }
        let c = num / den;
        for k in &self.checks {
            if lattice::dot(k, &v.coords) != &c * &k[0] {
                return Ok(None);
            }
        }
        Ok(Some(c))
    }

    /// The polarization scalar of `[α]`: the unique `c >= 1` with
    /// `[α]*D ~ c·D` up to torsion, if it exists.
    pub fn polarization_scalar(
        &self,
        alpha: &RingElement,
    ) -> Result<Option<BigInt>, CalculusError> {
        self.check_element(alpha)?;
        if alpha.is_zero() {
            return Err(CalculusError::ZeroArgument);
        }
        let q = self.quadratic_normal_form(alpha)?;
        Ok(self.scalar_of(&q)?.filter(|c| c >= &BigInt::one()))
    }

    /// Refutation certificate for the hypothesis `q(α) ~ a·q(1)`, `a >= 1`.
    ///
    /// Requires `q(α) + q(β) ~ s·q(1)` and `q(αβ) ~ t·q(1)` to be derivable;
    /// composition of pullbacks then forces `a(s - a) = t`, and the
    /// certificate lists every integer solution. An empty solution set
    /// refutes the hypothesis for every positive integer scalar.
    pub fn refute_scalar_hypothesis(
        &self,
        alpha: &RingElement,
        beta: &RingElement,
    ) -> Result<RefutationCertificate, CalculusError> {
        self.check_element(alpha)?;
        self.check_element(beta)?;
        if alpha.is_zero() || beta.is_zero() {
            return Err(CalculusError::ZeroArgument);
        }
        let sum = self
            .quadratic_normal_form(alpha)?
            .add(&self.quadratic_normal_form(beta)?);
        let s = self
            .scalar_of(&sum)?
            .ok_or(CalculusError::ScalarNotDerivable { side: "sum" })?;
        let product = self.quadratic_normal_form(&alpha.mul(beta)?)?;
        let t = self
            .scalar_of(&product)?
            .ok_or(CalculusError::ScalarNotDerivable { side: "product" })?;
        let solutions = positive_roots(&s, &t);
        Ok(RefutationCertificate {
            sum_scalar: s,
            product_scalar: t,
            solutions,
        })
    }

    /// Renders a class vector as a combination of the named generators.
    pub fn describe(&self, v: &ClassVector) -> String {
        let mut out = String::new();
        for (c, g) in v.coords.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&g.label(self.ring.kind()));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Integer solutions `a >= 1` of `a(s - a) = t`, ascending.
fn positive_roots(s: &BigInt, t: &BigInt) -> Vec<BigInt> {
    let disc = s * s - BigInt::from(4) * t;
    if disc.is_negative() {
        return Vec::new();
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return Vec::new();
    }
    let mut out = Vec::new();
    for cand in [s - &root, s + &root] {
        if (&cand % BigInt::from(2)).is_zero() {
            let a = cand / 2;
            if a >= BigInt::one() && !out.contains(&a) {
                out.push(a);
            }
        }
    }
    out.sort();
    out
}

/// Whether the diagonal of `A × A` is preperiodic under `(φ₁, φ₂)`: exactly
/// when `φ₁/φ₂` is a root of unity, decided by the `w`-th power test.
pub fn diagonal_preperiodic(phi1: &RingElement, phi2: &RingElement) -> Result<bool, CalculusError> {
    Ok(rings::ratio_is_root_of_unity(phi1, phi2)?)
}

fn expand_q(ring: RingSpec, alpha: &RingElement) -> Row {
    let d = ring.degree();
    let n = d + d * (d - 1) / 2;
    let mut row = Vec::with_capacity(n);
    let c = alpha.coeffs();
    for ck in c {
        row.push(ck * ck);
    }
    for k in 0..d {
        for l in k + 1..d {
            row.push(&c[k] * &c[l]);
        }
    }
    row
}

fn expand_b(ring: RingSpec, x: &RingElement, y: &RingElement) -> Row {
    let sum = x.add(y).expect("same ring");
    let mut row = expand_q(ring, &sum);
    let qx = expand_q(ring, x);
    let qy = expand_q(ring, y);
    for (r, (a, b)) in row.iter_mut().zip(qx.iter().zip(&qy)) {
        *r -= a + b;
    }
    row
}

/// The standard unit-invariance set of a ring: all roots of unity,
/// `{±g^m}` for the generator `g`.
pub fn standard_units(ring: RingSpec) -> Vec<RingElement> {
    let g = RingElement::generator(ring);
    let half = ring.root_of_unity_count() / 2;
    let mut units = Vec::new();
    for m in 0..half as u64 {
        let gm = g.power(m);
        units.push(gm.neg());
        units.push(gm);
    }
    units
}

/// Context over the standard unit set of a ring.
pub fn standard_context(kind: RingKind) -> CalculusContext {
    let ring = rings::ring_make(kind);
    CalculusContext::build(ring, standard_units(ring)).expect("standard units are valid")
}

/// The sixth-root context declared through the cube-root units
/// `{±1, ±j, ±j²}`; as a set this equals the standard sixth-root units.
pub fn cube_root_units() -> Vec<RingElement> {
    let j = RingElement::sixth_j();
    let one = RingElement::one(j.spec());
    let mut units = Vec::new();
    for u in [one, j.clone(), j.mul(&j).unwrap()] {
        units.push(u.neg());
        units.push(u);
    }
    units
}
