//! Shared test oracle: divisor addition by factoring Mumford pairs into
//! points over `F_{p²}`, interpolating a cubic through the four support
//! points and re-reducing along the residual intersection with the curve.
//! Entirely independent of the Cantor composition path it cross-checks.

use polarize::jacobian::{JacobianContext, MumfordDivisor, Poly, PrimeField};

/// Element of `F_{p²} = F_p[t]/(t² - ns)`.
pub type E = (u64, u64);

#[derive(Clone, Copy)]
pub struct Fp2 {
    fp: PrimeField,
    ns: u64,
}

impl Fp2 {
    pub fn new(fp: PrimeField) -> Fp2 {
        Fp2 {
            fp,
            ns: fp.non_residue(),
        }
    }

    pub fn embed(&self, a: u64) -> E {
        (a % self.fp.p, 0)
    }

    pub fn add(&self, a: E, b: E) -> E {
        (self.fp.add(a.0, b.0), self.fp.add(a.1, b.1))
    }

    pub fn sub(&self, a: E, b: E) -> E {
        (self.fp.sub(a.0, b.0), self.fp.sub(a.1, b.1))
    }

    pub fn neg(&self, a: E) -> E {
        (self.fp.neg(a.0), self.fp.neg(a.1))
    }

    pub fn mul(&self, a: E, b: E) -> E {
        let f = &self.fp;
        (
            f.add(f.mul(a.0, b.0), f.mul(self.ns, f.mul(a.1, b.1))),
            f.add(f.mul(a.0, b.1), f.mul(a.1, b.0)),
        )
    }

    pub fn inv(&self, a: E) -> E {
        // (x + yt)^-1 = (x - yt) / (x² - ns y²)
        let f = &self.fp;
        let n = f.sub(f.mul(a.0, a.0), f.mul(self.ns, f.mul(a.1, a.1)));
        let ninv = f.inv(n);
        (f.mul(a.0, ninv), f.mul(f.neg(a.1), ninv))
    }

    /// Brute-force square root over the quadratic extension.
    pub fn sqrt(&self, a: E) -> Option<E> {
        for x in 0..self.fp.p {
            for y in 0..self.fp.p {
                if self.mul((x, y), (x, y)) == a {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

fn trim(mut v: Vec<E>) -> Vec<E> {
    while v.last() == Some(&(0, 0)) {
        v.pop();
    }
    v
}

fn poly_embed(ext: &Fp2, p: &Poly) -> Vec<E> {
    trim(p.coeffs().iter().map(|&c| ext.embed(c)).collect())
}

fn poly_mul(ext: &Fp2, a: &[E], b: &[E]) -> Vec<E> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![(0, 0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ext.add(out[i + j], ext.mul(x, y));
        }
    }
    trim(out)
}

fn poly_add(ext: &Fp2, a: &[E], b: &[E]) -> Vec<E> {
    let n = a.len().max(b.len());
    let get = |v: &[E], k: usize| v.get(k).copied().unwrap_or((0, 0));
    trim((0..n).map(|k| ext.add(get(a, k), get(b, k))).collect())
}

fn poly_sub(ext: &Fp2, a: &[E], b: &[E]) -> Vec<E> {
    let n = a.len().max(b.len());
    let get = |v: &[E], k: usize| v.get(k).copied().unwrap_or((0, 0));
    trim((0..n).map(|k| ext.sub(get(a, k), get(b, k))).collect())
}

fn poly_eval(ext: &Fp2, p: &[E], x: E) -> E {
    let mut acc = (0, 0);
    for &c in p.iter().rev() {
        acc = ext.add(ext.mul(acc, x), c);
    }
    acc
}

/// Synthetic division by `(x - root)`; returns quotient and remainder.
fn syndiv(ext: &Fp2, p: &[E], root: E) -> (Vec<E>, E) {
    if p.is_empty() {
        return (vec![], (0, 0));
    }
    let mut quo = vec![(0, 0); p.len() - 1];
    let mut acc = p[p.len() - 1];
    for k in (0..p.len() - 1).rev() {
        quo[k] = acc;
        acc = ext.add(p[k], ext.mul(acc, root));
    }
    (trim(quo), acc)
}

/// Remainder of `p` modulo a monic divisor.
fn poly_rem(ext: &Fp2, p: &[E], divisor: &[E]) -> Vec<E> {
    assert!(divisor.last() == Some(&(1, 0)), "divisor must be monic");
    let mut rem: Vec<E> = p.to_vec();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let k = rem.len() - 1;
        let c = rem[k];
        for (t, &dc) in divisor.iter().enumerate() {
            rem[k - d + t] = ext.sub(rem[k - d + t], ext.mul(c, dc));
        }
        // the leading entry is now zero by monicity
        rem = trim(rem);
    }
    trim(rem)
}

fn down(e: E) -> u64 {
    assert_eq!(e.1, 0, "expected a base-field value, got {e:?}");
    e.0
}

/// Roots of a monic base-field quadratic over `F_{p²}` (always split).
fn quadratic_roots(ext: &Fp2, u: &Poly) -> (E, E) {
    let fp = &ext.fp;
    let u1 = u.coeff(1);
    let u0 = u.coeff(0);
    let disc = fp.sub(fp.mul(u1, u1), fp.mul(4, u0));
    let s = ext
        .sqrt(ext.embed(disc))
        .expect("base-field elements are squares in the quadratic extension");
    let half = ext.embed(fp.inv(2));
    let minus_u1 = ext.embed(fp.neg(u1));
    (
        ext.mul(ext.add(minus_u1, s), half),
        ext.mul(ext.sub(minus_u1, s), half),
    )
}

/// Interpolation-based sum of two divisor classes. Handles the generic
/// configuration: both inputs of degree 2 and the four support points with
/// pairwise distinct x-coordinates. Returns `None` when the configuration
/// is not generic (the caller skips those pairs).
pub fn oracle_add(
    ctx: &JacobianContext,
    a: &MumfordDivisor,
    b: &MumfordDivisor,
) -> Option<MumfordDivisor> {
    let fp = *ctx.field();
    let ext = Fp2::new(fp);
    if a.u.degree() != 2 || b.u.degree() != 2 {
        return None;
    }
    let (x1, x2) = quadratic_roots(&ext, &a.u);
    let (x3, x4) = quadratic_roots(&ext, &b.u);
    let xs = [x1, x2, x3, x4];
    for i in 0..4 {
        for j in i + 1..4 {
            if xs[i] == xs[j] {
                return None;
            }
        }
    }
    let va = poly_embed(&ext, &a.v);
    let vb = poly_embed(&ext, &b.v);
    let ys = [
        poly_eval(&ext, &va, x1),
        poly_eval(&ext, &va, x2),
        poly_eval(&ext, &vb, x3),
        poly_eval(&ext, &vb, x4),
    ];

    // Lagrange cubic h with h(x_i) = y_i
    let mut h: Vec<E> = vec![];
    for i in 0..4 {
        let mut num = vec![(1, 0)];
        let mut den = (1, 0);
        for j in 0..4 {
            if i == j {
                continue;
            }
            num = poly_mul(&ext, &num, &[ext.neg(xs[j]), (1, 0)]);
            den = ext.mul(den, ext.sub(xs[i], xs[j]));
        }
        let scale = ext.mul(ys[i], ext.inv(den));
        let scaled: Vec<E> = num.iter().map(|&c| ext.mul(c, scale)).collect();
        h = poly_add(&ext, &h, &scaled);
    }

    // y = h(x) meets the curve where h² - f = 0; divide out the four
    // support roots, the residual quadratic (or linear) factor carries the
    // reduced representative of -(a + b), i.e. v = -h on it.
    let f = poly_embed(&ext, &ctx.params.f);
    let mut g = poly_sub(&ext, &poly_mul(&ext, &h, &h), &f);
    for &xi in &xs {
        let (q, r) = syndiv(&ext, &g, xi);
        assert_eq!(r, (0, 0), "support point must be an intersection");
        g = q;
    }
    if g.is_empty() {
        return Some(MumfordDivisor::identity());
    }
    let lead_inv = ext.inv(*g.last().unwrap());
    let u_ext: Vec<E> = g.iter().map(|&c| ext.mul(c, lead_inv)).collect();
    let minus_h: Vec<E> = h.iter().map(|&c| ext.neg(c)).collect();
    let v_ext = poly_rem(&ext, &minus_h, &u_ext);

    // the class sum is rational, so both coordinates descend to F_p
    let u = Poly::new(u_ext.iter().map(|&c| down(c)).collect());
    let v = Poly::new(v_ext.iter().map(|&c| down(c)).collect());
    Some(MumfordDivisor::new(u, v))
}
