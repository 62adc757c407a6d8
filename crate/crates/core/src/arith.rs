//! Small modular-arithmetic helpers.

/// Deterministic trial division; the moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Least nonnegative residue of `x` mod `p`.
#[inline]
pub fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u32) -> u32 {
    ((a % p as u64) * (b % p as u64) % p as u64) as u32
}

/// `C(n, k)`, or `None` on 128-bit overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Primes up to and including `bound`, ascending.
pub fn primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (2..=bound).filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps: alloc::vec::Vec<u64> = primes_up_to(30).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 4), Some(35));
        assert_eq!(binomial(18, 12), Some(18564));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(400, 200), None);
    }

    #[test]
    fn residues_are_nonnegative() {
        assert_eq!(residue(-1, 7), 6);
        assert_eq!(residue(-14, 7), 0);
        assert_eq!(residue(23, 7), 2);
    }
}
