//! The documented linear congruential generator behind every seeded choice.

/// `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const A: u64 = 6364136223846793005;
    pub const C: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::A).wrapping_add(Self::C);
        self.state
    }

    /// Uniform-ish integer in `[lo, hi]` drawn from the high bits.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + ((self.next_u64() >> 33) % span) as i64
    }

    /// Nonzero integer in `[-r, r]`.
    pub fn nonzero_in(&mut self, r: i64) -> i64 {
        loop {
            let v = self.int_in(-r, r);
            if v != 0 {
                return v;
            }
        }
    }

    /// Independent generator for a sub-task, derived from the next output.
    pub fn fork(&mut self) -> Lcg {
        Lcg::new(self.next_u64() ^ 0x9e37_79b9_7f4a_7c15)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_recurrence() {
        let mut r = Lcg::new(0);
        assert_eq!(r.next_u64(), 1442695040888963407);
        assert_eq!(r.next_u64(), 1442695040888963407u64.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407));
    }

    #[test]
    fn ranges() {
        let mut r = Lcg::new(7);
        for _ in 0..1000 {
            let v = r.int_in(-3, 3);
            assert!((-3..=3).contains(&v));
            assert_ne!(r.nonzero_in(2), 0);
        }
    }
}
