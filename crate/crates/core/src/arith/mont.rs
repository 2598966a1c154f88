//! Montgomery arithmetic for odd moduli that fit in one or two machine words.
//!
//! These are the hot paths of Pollard rho and Miller-Rabin. Anything wider
//! than 127 bits falls back to `BigUint` arithmetic in the callers.

/// `a * b mod n` without overflow.
#[inline]
pub fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

#[cfg(test)]
pub fn powmod_u64(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, n);
        }
        base = mulmod_u64(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Montgomery context for an odd modulus below 2^63, with R = 2^64.
#[derive(Clone, Copy, Debug)]
pub struct Mont64 {
    n: u64,
    ninv: u64,
    r2: u64,
}

impl Mont64 {
    pub fn new(n: u64) -> Self {
        debug_assert!(n & 1 == 1 && n < 1 << 63);
        let mut inv = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % n as u128) as u64;
        let r2 = mulmod_u64(r, r, n);
        Mont64 { n, ninv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let s = (t + m as u128 * self.n as u128) >> 64;
        let s = s as u64;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.n, self.r2)
    }

    #[cfg(test)]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

/// Full 128x128 -> 256 bit product as (hi, lo).
#[inline]
fn widening_mul(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let (b0, b1) = (b as u64 as u128, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let (mid, c1) = p01.overflowing_add(p10);
    let (lo, c2) = p00.overflowing_add(mid << 64);
    let hi = p11 + (mid >> 64) + ((c1 as u128) << 64) + c2 as u128;
    (hi, lo)
}

/// Montgomery context for an odd modulus below 2^127, with R = 2^128.
#[derive(Clone, Copy, Debug)]
pub struct Mont128 {
    n: u128,
    ninv: u128,
    r2: u128,
}

impl Mont128 {
    pub fn new(n: u128) -> Self {
        debug_assert!(n & 1 == 1 && n < 1 << 127);
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        // R mod n, then R^2 mod n by 128 doublings of R mod n.
        let r = (u128::MAX % n + 1) % n;
        let mut r2 = r;
        for _ in 0..128 {
            r2 = if r2 >= n - r2 { r2 - (n - r2) } else { r2 + r2 };
        }
        Mont128 { n, ninv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.n
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.ninv);
        let (mh, ml) = widening_mul(m, self.n);
        let (_, carry) = lo.overflowing_add(ml);
        // hi + mh + carry < 2n < 2^128 because n < 2^127.
        let s = hi + mh + carry as u128;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = widening_mul(a, b);
        self.redc(hi, lo)
    }

    #[inline]
    pub fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    #[cfg(test)]
    pub fn from_mont(&self, a: u128) -> u128 {
        self.redc(0, a)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        // a, b < n < 2^127 so the sum cannot overflow.
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    pub fn pow(&self, base: u128, exp: &[u64]) -> u128 {
        // exp is little-endian limbs
        let mut acc = self.to_mont(1);
        let mut b = base;
        for &limb in exp {
            let mut e = limb;
            for _ in 0..64 {
                if e & 1 == 1 {
                    acc = self.mul(acc, b);
                }
                b = self.mul(b, b);
                e >>= 1;
            }
        }
        acc
    }
}
