//! Dense univariate polynomials over a small prime field, low-to-high
//! coefficient order, trailing zeros trimmed (the zero polynomial has an
//! empty coefficient vector).

use super::fp::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(fp: &PrimeField, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| fp.reduce_i64(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: u64, fp: &PrimeField) -> Poly {
        Poly::new(vec![c % fp.p])
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (0 beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Poly, fp: &PrimeField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| fp.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, fp: &PrimeField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| fp.sub(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self, fp: &PrimeField) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| fp.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly, fp: &PrimeField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fp.add(out[i + j], fp.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn mul_scalar(&self, c: u64, fp: &PrimeField) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| fp.mul(a, c)).collect())
    }

    pub fn monic(&self, fp: &PrimeField) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(fp.inv(self.leading()), fp)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly, fp: &PrimeField) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.degree() < divisor.degree() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree() as usize;
        let lead_inv = fp.inv(divisor.leading());
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = fp.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quo[k - dd] = c;
            for (t, &dcoef) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + t] = fp.sub(rem[k - dd + t], fp.mul(c, dcoef));
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, fp: &PrimeField) -> Poly {
        self.divrem(divisor, fp).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly, fp: &PrimeField) -> Poly {
        let (q, r) = self.divrem(divisor, fp);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, fp: &PrimeField) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, fp);
            a = b;
            b = r;
        }
        a.monic(fp)
    }

    /// Extended gcd: returns monic `g` and `(s, t)` with `s a + t b = g`.
    pub fn xgcd(&self, other: &Poly, fp: &PrimeField) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fp);
            r0 = std::mem::replace(&mut r1, r);
            let snew = s0.sub(&q.mul(&s1, fp), fp);
            s0 = std::mem::replace(&mut s1, snew);
            let tnew = t0.sub(&q.mul(&t1, fp), fp);
            t0 = std::mem::replace(&mut t1, tnew);
        }
        if r0.is_zero() {
            return (Poly::zero(), Poly::zero(), Poly::zero());
        }
        let lead_inv = fp.inv(r0.leading());
        (
            r0.mul_scalar(lead_inv, fp),
            s0.mul_scalar(lead_inv, fp),
            t0.mul_scalar(lead_inv, fp),
        )
    }

    pub fn eval(&self, x: u64, fp: &PrimeField) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = fp.add(fp.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, fp: &PrimeField) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, &c)| fp.mul(c, (k as u64 + 1) % fp.p))
                .collect(),
        )
    }

    /// Pushforward substitution for `x ↦ c·x`: returns `c^(deg) · p(x/c)`,
    /// which is monic whenever `p` is. Used for automorphism action on the
    /// `u`-coordinate.
    pub fn scale_roots(&self, c: u64, fp: &PrimeField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let deg = self.degree() as usize;
        let mut out = Vec::with_capacity(deg + 1);
        for (k, &a) in self.coeffs.iter().enumerate() {
            out.push(fp.mul(a, fp.pow(c, (deg - k) as u64)));
        }
        Poly::new(out)
    }

    /// Substitution `p(x/c)` without the monic normalization, i.e. the
    /// coefficient of `x^k` becomes `a_k c^{-k}`. Used for the
    /// `v`-coordinate of the automorphism action.
    pub fn substitute_x_over(&self, c: u64, fp: &PrimeField) -> Poly {
        let cinv = fp.inv(c);
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| fp.mul(a, fp.pow(cinv, k as u64)))
                .collect(),
        )
    }

    /// Printable form with `x` as the variable.
    pub fn render(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match k {
                0 => out.push_str(&c.to_string()),
                _ => {
                    if c != 1 {
                        out.push_str(&format!("{c}*"));
                    }
                    out.push(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp13() -> PrimeField {
        PrimeField::new(13)
    }

    #[test]
    fn divrem_reconstructs() {
        let fp = fp13();
        let a = Poly::from_i64s(&fp, &[3, 0, 7, 1, 5]);
        let b = Poly::from_i64s(&fp, &[1, 2, 1]);
        let (q, r) = a.divrem(&b, &fp);
        assert!(r.degree() < b.degree());
        assert_eq!(q.mul(&b, &fp).add(&r, &fp), a);
    }

    #[test]
    fn xgcd_identity() {
        let fp = fp13();
        let a = Poly::from_i64s(&fp, &[1, 0, 1]);
        let b = Poly::from_i64s(&fp, &[2, 1]);
        let (g, s, t) = a.xgcd(&b, &fp);
        let lhs = s.mul(&a, &fp).add(&t.mul(&b, &fp), &fp);
        assert_eq!(lhs, g);
        assert!(g.is_monic());
    }

    #[test]
    fn gcd_detects_square_factors() {
        let fp = fp13();
        // f = x(x^2-1)^2 = x^5 - 2x^3 + x is not squarefree
        let f = Poly::from_i64s(&fp, &[0, 1, 0, -2, 0, 1]);
        let g = f.gcd(&f.derivative(&fp), &fp);
        assert!(g.degree() > 0);
        // x^5 - x is squarefree
        let f = Poly::from_i64s(&fp, &[0, -1, 0, 0, 0, 1]);
        let g = f.gcd(&f.derivative(&fp), &fp);
        assert!(g.is_one());
    }

    #[test]
    fn scale_roots_tracks_point_transform() {
        let fp = fp13();
        // u with roots 2 and 6; after x -> -x the roots are -2, -6
        let u = Poly::from_i64s(&fp, &[12, 5, 1]); // (x-2)(x-6)
        let c = fp.p - 1;
        let moved = u.scale_roots(c, &fp);
        assert!(moved.is_monic());
        assert_eq!(moved.eval(fp.reduce_i64(-2), &fp), 0);
        assert_eq!(moved.eval(fp.reduce_i64(-6), &fp), 0);
        // v(x/c) evaluates at c*x like v at x
        let v = Poly::from_i64s(&fp, &[8, 10]);
        let vv = v.substitute_x_over(c, &fp);
        assert_eq!(vv.eval(fp.mul(c, 4), &fp), v.eval(4, &fp));
    }

    #[test]
    fn render_is_readable() {
        let fp = fp13();
        let f = Poly::from_i64s(&fp, &[0, -1, 0, 0, 0, 1]);
        assert_eq!(f.render('x'), "x^5 + 12*x");
        assert_eq!(Poly::zero().render('x'), "0");
    }
}
