use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{jacobi, perfect_square_root};
use crate::error::{Error, Result};

/// A square root of -1 modulo a prime `p = 1 mod 4`, from the first
/// quadratic non-residue among 2, 3, 4, ...
pub fn sqrt_minus_one(p: &BigUint) -> Result<BigUint> {
    if (p % 4u32).to_u32() != Some(1) {
        return Err(Error::Precondition(format!("{p} is not 1 mod 4")));
    }
    let e = (p - 1u32) >> 2;
    let mut c = BigUint::from(2u32);
    loop {
        if &c >= p {
            return Err(Error::NotPrime(p.to_string()));
        }
        match jacobi(&BigInt::from_biguint(Sign::Plus, c.clone()), p)? {
            -1 => break,
            0 => return Err(Error::NotPrime(p.to_string())),
            _ => c += 1u32,
        }
    }
    let r = c.modpow(&e, p);
    if (&r * &r + 1u32) % p != BigUint::zero() {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(r)
}

/// `p = x^2 + y^2` with `x >= y` for `p = 2` or a prime `p = 1 mod 4`.
pub fn prime_as_two_squares(p: &BigUint) -> Result<(BigUint, BigUint)> {
    if p == &BigUint::from(2u32) {
        return Ok((BigUint::one(), BigUint::one()));
    }
    let r = sqrt_minus_one(p)?;
    let bound = p.sqrt();
    let (mut a, mut b) = (p.clone(), r);
    while b > bound {
        let t = &a % &b;
        a = b;
        b = t;
    }
    let rest = p - &b * &b;
    let y = perfect_square_root(&rest)
        .ok_or_else(|| Error::Internal(format!("descent for {p} ended off a square")))?;
    Ok(if b >= y { (b, y) } else { (y, b) })
}
