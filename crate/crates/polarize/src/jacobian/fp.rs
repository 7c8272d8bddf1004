//! Arithmetic in small prime fields `F_p` (and the quadratic extension
//! needed for point counting). Elements are `u64` residues; every prime
//! used here is at most a few thousand, so products fit comfortably.

/// A small odd prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        debug_assert!(is_prime(p) && p > 2);
        PrimeField { p }
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Quadratic character: 0 on zero, 1 on squares, -1 on non-squares.
    pub fn legendre(&self, a: u64) -> i32 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Smallest square root of `a`, if one exists. Linear scan; fine for
    /// the small primes this crate works with.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (0..self.p).find(|&y| self.mul(y, y) == a)
    }

    /// Multiplicative order of `a` (nonzero).
    pub fn order(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        let mut k = 1u64;
        let mut acc = a % self.p;
        while acc != 1 {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// Smallest quadratic non-residue.
    pub fn non_residue(&self) -> u64 {
        (2..self.p)
            .find(|&n| self.legendre(n) == -1)
            .expect("odd prime fields have non-residues")
    }
}

/// `F_{p^2} = F_p[t] / (t^2 - ns)` with `ns` a non-residue. Only what the
/// norm-form point count needs.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticExtension {
    pub fp: PrimeField,
    pub ns: u64,
}

impl QuadraticExtension {
    pub fn new(fp: PrimeField) -> QuadraticExtension {
        QuadraticExtension {
            fp,
            ns: fp.non_residue(),
        }
    }

    #[inline]
    pub fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let f = &self.fp;
        (
            f.add(f.mul(a.0, b.0), f.mul(self.ns, f.mul(a.1, b.1))),
            f.add(f.mul(a.0, b.1), f.mul(a.1, b.0)),
        )
    }

    #[inline]
    pub fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        (self.fp.add(a.0, b.0), self.fp.add(a.1, b.1))
    }

    /// Norm down to `F_p`: `N(x + y t) = x^2 - ns y^2`. An element of the
    /// extension is a square iff its norm is a square in `F_p`.
    #[inline]
    pub fn norm(&self, a: (u64, u64)) -> u64 {
        let f = &self.fp;
        f.sub(f.mul(a.0, a.0), f.mul(self.ns, f.mul(a.1, a.1)))
    }
}
