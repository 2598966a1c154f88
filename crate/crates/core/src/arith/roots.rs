use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::One;

use super::prime::primes_up_to;

/// Exact square root, if `n` is a perfect square.
pub fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn perfect_square_root_u64(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Largest exponent representation `n = base^k` with `k >= 2`, if any.
///
/// Tries every prime `k <= log2(n)`, and keeps reducing the base so the
/// returned base is not itself a perfect power.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n <= &BigUint::one() {
        return None;
    }
    let mut base = n.clone();
    let mut exponent = 1u32;
    'outer: loop {
        let bits = base.bits();
        if bits < 2 {
            break;
        }
        for k in primes_up_to(bits) {
            let k = k as u32;
            let r = base.nth_root(k);
            if r > BigUint::one() && r.pow(k) == base {
                base = r;
                exponent *= k;
                continue 'outer;
            }
        }
        break;
    }
    (exponent > 1).then_some((base, exponent))
}

/// `(n, k)` with `n = base * k^2` where `base` is squarefree, for small `n`.
pub fn squarefree_decomposition_u64(mut n: u64) -> (u64, u64) {
    let mut square_root = 1u64;
    let mut base = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            base *= p;
        }
        p += 1;
    }
    base *= n;
    (base, square_root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        assert_eq!(perfect_square_root(&BigUint::from(49u32)), Some(BigUint::from(7u32)));
        assert_eq!(perfect_square_root(&BigUint::from(2u32)), None);
        assert_eq!(
            perfect_power(&BigUint::from(279_936u32)),
            Some((BigUint::from(6u32), 7))
        );
        assert_eq!(perfect_power(&BigUint::from(64u32)), Some((BigUint::from(2u32), 6)));
        assert_eq!(perfect_power(&BigUint::from(12u32)), None);
        assert_eq!(perfect_power(&BigUint::from(1u32)), None);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition_u64(117), (13, 3));
        assert_eq!(squarefree_decomposition_u64(3328), (13, 16));
        assert_eq!(squarefree_decomposition_u64(1), (1, 1));
    }

    proptest! {
        #[test]
        fn square_root_of_square(limbs in proptest::collection::vec(any::<u32>(), 1..6)) {
            // up to 160 bits, i.e. beyond 10^48; wide enough for the 10^50 grid with headroom
            let n = BigUint::new(limbs) % BigUint::from(10u32).pow(50);
            let sq = &n * &n;
            prop_assert_eq!(perfect_square_root(&sq), Some(n.clone()));
            if n > BigUint::from(1u32) {
                prop_assert_eq!(perfect_square_root(&(&sq + 1u32)), None);
            }
        }
    }
}
