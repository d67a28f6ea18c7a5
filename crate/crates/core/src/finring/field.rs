use crate::error::{Error, Result};

/// The prime field Z/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..).take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse via Fermat. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse in Z/{}", self.p);
        let mut result = 1u64;
        let mut base = (a % self.p) as u64;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        result as u32
    }

    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Checks that every coefficient is a residue in `[0, p)`.
    pub fn check_vec(self, v: &[u32], what: &str) -> Result<()> {
        match v.iter().position(|&c| c >= self.p) {
            Some(i) => Err(Error::structural(format!(
                "{what}: coefficient {} at position {i} is not a residue mod {}",
                v[i], self.p
            ))),
            None => Ok(()),
        }
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn scale_vec(self, s: u32, v: &[u32]) -> Vec<u32> {
        v.iter().map(|&x| self.mul(s, x)).collect()
    }

    /// `acc += s * v`
    pub fn axpy(self, acc: &mut [u32], s: u32, v: &[u32]) {
        if s == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(s, x));
        }
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        for p in [0, 1, 4, 6, 9, 15, 25] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        for p in [2, 3, 5, 7, 11, 13, 65521] {
            assert!(PrimeField::new(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.reduce(-1), 6);
    }
}
