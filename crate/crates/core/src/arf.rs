//! Z/2 quadratic forms on a symplectic Z/2 vector space, Arf invariants,
//! theta-characteristic parity counts, and transvection orbits.
//!
//! Vectors live in a 2g-dimensional space with symplectic basis
//! a_1..a_g, b_1..b_g and pairing a_i . b_j = delta_ij,
//! a_i . a_j = b_i . b_j = 0. A form is stored by its 2g basis values;
//! evaluation everywhere else follows from Q(x+y) = Q(x) + Q(y) + x.y.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ArfError {
    #[error("genus must be in {lo}..={hi}, got {g}")]
    GenusWindow { g: u32, lo: u32, hi: u32 },
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("basis value string must consist of 2g characters 0/1, got `{0}`")]
    BadBitString(String),
}

/// The standard symplectic Z/2 space of genus g. Vectors are bitmasks with
/// bit i for a_{i+1} (i < g) and bit g+i for b_{i+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticSpace {
    g: u32,
}

impl SymplecticSpace {
    pub fn new(g: u32) -> Self {
        SymplecticSpace { g }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g as usize
    }

    fn lo_mask(&self) -> u32 {
        (1u32 << self.g) - 1
    }

    /// Symplectic pairing of two vectors given as bitmasks.
    pub fn pairing(&self, x: u32, y: u32) -> u8 {
        let (xa, xb) = (x & self.lo_mask(), x >> self.g);
        let (ya, yb) = (y & self.lo_mask(), y >> self.g);
        (((xa & yb).count_ones() + (xb & ya).count_ones()) & 1) as u8
    }
}

/// A Z/2 quadratic form refining the symplectic pairing, stored by its
/// values on the basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    g: u32,
    /// bit i = Q(a_{i+1}) for i < g, bit g+i = Q(b_{i+1})
    bits: u32,
}

impl QuadraticForm {
    pub fn new(g: u32, basis_values: &[u8]) -> Result<Self, ArfError> {
        if basis_values.len() != 2 * g as usize {
            return Err(ArfError::VectorLength {
                expected: 2 * g as usize,
                got: basis_values.len(),
            });
        }
        let mut bits = 0u32;
        for (i, &v) in basis_values.iter().enumerate() {
            if v & 1 == 1 {
                bits |= 1 << i;
            }
        }
        Ok(QuadraticForm { g, bits })
    }

    pub fn from_bits(g: u32, bits: u32) -> Self {
        QuadraticForm {
            g,
            bits: bits & ((1u32 << (2 * g)) - 1),
        }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn space(&self) -> SymplecticSpace {
        SymplecticSpace::new(self.g)
    }

    /// Evaluate on a vector given as a bitmask, by polarization:
    /// Q(sum e_i) = sum Q(e_i) + sum_{i<j} e_i . e_j, and the only basis
    /// pairs with nonzero pairing are (a_k, b_k).
    pub fn evaluate_mask(&self, v: u32) -> u8 {
        let lo = v & ((1u32 << self.g) - 1);
        let hi = v >> self.g;
        (((v & self.bits).count_ones() + (lo & hi).count_ones()) & 1) as u8
    }

    /// Evaluate on a vector given by 0/1 coordinates of length 2g.
    pub fn evaluate(&self, v: &[u8]) -> Result<u8, ArfError> {
        if v.len() != 2 * self.g as usize {
            return Err(ArfError::VectorLength {
                expected: 2 * self.g as usize,
                got: v.len(),
            });
        }
        let mut mask = 0u32;
        for (i, &c) in v.iter().enumerate() {
            if c & 1 == 1 {
                mask |= 1 << i;
            }
        }
        Ok(self.evaluate_mask(mask))
    }

    /// Arf invariant: sum of Q(a_i) Q(b_i) mod 2.
    pub fn arf(&self) -> u8 {
        let lo = self.bits & ((1u32 << self.g) - 1);
        let hi = self.bits >> self.g;
        ((lo & hi).count_ones() & 1) as u8
    }

    /// Pull back along the transvection x -> x + (x.v) v. Transvections are
    /// involutions, so this is also the pushforward.
    pub fn transvect(&self, v: u32) -> QuadraticForm {
        let space = self.space();
        let qv = self.evaluate_mask(v);
        let mut bits = 0u32;
        for i in 0..2 * self.g {
            let e = 1u32 << i;
            let mut value = (self.bits >> i) & 1;
            if space.pairing(e, v) == 1 {
                // Q(e + v) = Q(e) + Q(v) + e.v
                value ^= u32::from(qv) ^ 1;
            }
            bits |= value << i;
        }
        QuadraticForm { g: self.g, bits }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..2 * self.g {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        Ok(())
    }
}

impl FromStr for QuadraticForm {
    type Err = ArfError;

    fn from_str(s: &str) -> Result<Self, ArfError> {
        if s.is_empty() || !s.len().is_multiple_of(2) || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(ArfError::BadBitString(s.to_string()));
        }
        let g = (s.len() / 2) as u32;
        let mut bits = 0u32;
        for (i, b) in s.bytes().enumerate() {
            if b == b'1' {
                bits |= 1 << i;
            }
        }
        Ok(QuadraticForm { g, bits })
    }
}

/// Exhaustive count of quadratic forms by Arf invariant: (even, odd).
/// Brute force over all 2^{2g} forms; supported for 1 <= g <= 4.
pub fn count_by_arf(g: u32) -> Result<(u64, u64), ArfError> {
    if !(1..=4).contains(&g) {
        return Err(ArfError::GenusWindow { g, lo: 1, hi: 4 });
    }
    let mut even = 0u64;
    let mut odd = 0u64;
    for bits in 0..(1u32 << (2 * g)) {
        if QuadraticForm::from_bits(g, bits).arf() == 0 {
            even += 1;
        } else {
            odd += 1;
        }
    }
    Ok((even, odd))
}

/// Classical closed-form parity counts 2^{g-1}(2^g + 1) even and
/// 2^{g-1}(2^g - 1) odd theta characteristics; genus 0 has the unique (even)
/// root of the dualizing sheaf.
pub fn theta_counts_closed_form(g: u32) -> (u64, u64) {
    if g == 0 {
        return (1, 0);
    }
    let half = 1u64 << (g - 1);
    let full = 1u64 << g;
    (half * (full + 1), half * (full - 1))
}

/// One orbit of the transvection action on quadratic forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: u64,
    pub arf: u8,
    pub representative: QuadraticForm,
}

/// Orbit partition of all 2^{2g} forms under the group generated by the
/// symplectic transvections, acting by pullback.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub g: u32,
    /// Sorted by decreasing size (the even orbit is the larger one).
    pub orbits: Vec<Orbit>,
}

pub fn transvection_orbits(g: u32) -> Result<OrbitPartition, ArfError> {
    if !(1..=3).contains(&g) {
        return Err(ArfError::GenusWindow { g, lo: 1, hi: 3 });
    }
    let n_forms = 1usize << (2 * g);
    let mut seen = vec![false; n_forms];
    let mut orbits = Vec::new();
    for start in 0..n_forms as u32 {
        if seen[start as usize] {
            continue;
        }
        let rep = QuadraticForm::from_bits(g, start);
        let mut stack = vec![rep];
        seen[start as usize] = true;
        let mut size = 0u64;
        while let Some(q) = stack.pop() {
            size += 1;
            debug_assert_eq!(q.arf(), rep.arf());
            for v in 1..(1u32 << (2 * g)) {
                let image = q.transvect(v);
                if !seen[image.bits as usize] {
                    seen[image.bits as usize] = true;
                    stack.push(image);
                }
            }
        }
        orbits.push(Orbit {
            size,
            arf: rep.arf(),
            representative: rep,
        });
    }
    orbits.sort_by_key(|o| std::cmp::Reverse(o.size));
    Ok(OrbitPartition { g, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let g1_zero = QuadraticForm::new(1, &[0, 0]).unwrap();
        // Q(a1 + b1) = 0 + 0 + a1.b1 = 1
        assert_eq!(g1_zero.evaluate(&[1, 1]).unwrap(), 1);
        assert_eq!(g1_zero.evaluate(&[0, 0]).unwrap(), 0);

        let g1_ones = QuadraticForm::new(1, &[1, 1]).unwrap();
        assert_eq!(g1_ones.evaluate(&[1, 1]).unwrap(), 1);

        assert_eq!(
            g1_ones.evaluate(&[1, 1, 0]),
            Err(ArfError::VectorLength { expected: 2, got: 3 })
        );
    }

    #[test]
    fn arf_examples() {
        assert_eq!(QuadraticForm::new(1, &[0, 0]).unwrap().arf(), 0);
        assert_eq!(QuadraticForm::new(1, &[1, 1]).unwrap().arf(), 1);
        assert_eq!(QuadraticForm::new(2, &[1, 1, 1, 1]).unwrap().arf(), 0);
    }

    #[test]
    fn quadratic_identity_exhaustive_small_genus() {
        for g in 1..=3u32 {
            let space = SymplecticSpace::new(g);
            let n = 1u32 << (2 * g);
            for bits in 0..n {
                let q = QuadraticForm::from_bits(g, bits);
                for x in 0..n {
                    for y in 0..n {
                        let lhs = q.evaluate_mask(x ^ y);
                        let rhs = q.evaluate_mask(x) ^ q.evaluate_mask(y) ^ space.pairing(x, y);
                        assert_eq!(lhs, rhs, "g={g} q={bits:b} x={x:b} y={y:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_identity_sampled_genus_four() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA4F);
        let space = SymplecticSpace::new(4);
        let n = 1u32 << 8;
        for _ in 0..20_000 {
            let q = QuadraticForm::from_bits(4, rng.gen_range(0..n));
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            assert_eq!(
                q.evaluate_mask(x ^ y),
                q.evaluate_mask(x) ^ q.evaluate_mask(y) ^ space.pairing(x, y)
            );
        }
    }

    #[test]
    fn theta_counts() {
        assert_eq!(count_by_arf(1).unwrap(), (3, 1));
        assert_eq!(count_by_arf(2).unwrap(), (10, 6));
        assert_eq!(count_by_arf(3).unwrap(), (36, 28));
        for g in 1..=4 {
            let counts = count_by_arf(g).unwrap();
            assert_eq!(counts, theta_counts_closed_form(g), "g = {g}");
            assert_eq!(counts.0 + counts.1, 1 << (2 * g));
        }
        assert_eq!(theta_counts_closed_form(0), (1, 0));
        assert!(count_by_arf(5).is_err());
        assert!(count_by_arf(0).is_err());
    }

    #[test]
    fn arf_is_transvection_invariant() {
        for g in 1..=3u32 {
            let n = 1u32 << (2 * g);
            for bits in 0..n {
                let q = QuadraticForm::from_bits(g, bits);
                for v in 1..n {
                    assert_eq!(q.transvect(v).arf(), q.arf());
                }
            }
        }
    }

    #[test]
    fn transvections_are_involutions() {
        for bits in 0..(1u32 << 4) {
            let q = QuadraticForm::from_bits(2, bits);
            for v in 1..(1u32 << 4) {
                assert_eq!(q.transvect(v).transvect(v), q);
            }
        }
    }

    #[test]
    fn orbit_partition_matches_parity_counts() {
        let expected_sizes = [(1u32, (3u64, 1u64)), (2, (10, 6)), (3, (36, 28))];
        for (g, (even, odd)) in expected_sizes {
            let partition = transvection_orbits(g).unwrap();
            assert_eq!(partition.orbits.len(), 2, "two isomorphism classes at g = {g}");
            assert_eq!(partition.orbits[0].size, even);
            assert_eq!(partition.orbits[0].arf, 0);
            assert_eq!(partition.orbits[1].size, odd);
            assert_eq!(partition.orbits[1].arf, 1);
        }
        assert!(transvection_orbits(4).is_err());
    }

    #[test]
    fn bit_string_round_trip() {
        for bits in 0..(1u32 << 4) {
            let q = QuadraticForm::from_bits(2, bits);
            let s = q.to_string();
            assert_eq!(s.parse::<QuadraticForm>().unwrap(), q);
        }
        assert!("01x0".parse::<QuadraticForm>().is_err());
        assert!("010".parse::<QuadraticForm>().is_err());
        assert!("".parse::<QuadraticForm>().is_err());
    }
}
