//! Offset cost functions and the layer geometry derived from them.
//!
//! A [`CostModel`] maps a positive back-offset to the bit length of its
//! codeword. Because every supported model is monotone, the offsets
//! `1..=n` split into contiguous intervals of equal cost; [`LayerSizes`]
//! records the right end of each interval, which is the window capacity of
//! one suffix-tree layer.

use crate::bits::{BitReader, BitWriter};
use crate::error::{Error, Result};

/// A closed-form, monotone integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CostModel {
    /// Elias gamma: `2·⌊log2 x⌋ + 1` bits.
    #[default]
    Gamma,
    /// Plain binary without leading zeros: `⌊log2 x⌋ + 1` bits.
    Binary,
}

impl CostModel {
    /// Codeword length of `x` in bits.
    pub fn bitlen(self, x: u64) -> Result<u32> {
        if x == 0 {
            return Err(Error::ZeroValue);
        }
        let msb = 63 - x.leading_zeros();
        Ok(match self {
            CostModel::Gamma => 2 * msb + 1,
            CostModel::Binary => msb + 1,
        })
    }

    /// Identifier byte used by the container header.
    pub fn id(self) -> u8 {
        match self {
            CostModel::Gamma => 0x01,
            CostModel::Binary => 0x02,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            0x01 => Ok(CostModel::Gamma),
            0x02 => Ok(CostModel::Binary),
            other => Err(Error::BadModel(other)),
        }
    }

    /// Largest `j` with `bitlen(j) <= bits`, if any.
    fn max_with_cost(self, bits: u32) -> u64 {
        let width = match self {
            CostModel::Gamma => bits.div_ceil(2),
            CostModel::Binary => bits,
        };
        if width >= 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        }
    }
}

/// Writes the Elias gamma codeword of `x`; returns the number of bits written.
pub fn gamma_encode(x: u64, sink: &mut BitWriter) -> Result<u32> {
    if x == 0 {
        return Err(Error::ZeroValue);
    }
    let msb = 63 - x.leading_zeros();
    sink.write_bits(0, msb);
    sink.write_bits(x, msb + 1);
    Ok(2 * msb + 1)
}

/// Reads one Elias gamma codeword.
pub fn gamma_decode(source: &mut BitReader<'_>) -> Result<u64> {
    let start = source.position();
    let mut zeros = 0u32;
    while !source.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return Err(Error::Overflow { bit: start });
        }
    }
    let low = source.read_bits(zeros)?;
    Ok((1u64 << zeros) | low)
}

/// Window capacities `sw_1 < … < sw_s` with their codeword costs `b_1 < … < b_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSizes {
    sizes: Vec<usize>,
    bit_costs: Vec<u32>,
}

impl LayerSizes {
    /// Computes the layer set for offsets `1..=n`.
    pub fn new(model: CostModel, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        let top = model.bitlen(n as u64)?;
        let mut sizes = Vec::new();
        let mut bit_costs = Vec::new();
        let mut x = 1u64;
        loop {
            let bits = model.bitlen(x)?;
            let size = model.max_with_cost(bits).min(n as u64);
            sizes.push(size as usize);
            bit_costs.push(bits);
            if bits == top {
                break;
            }
            x = size + 1;
        }
        Ok(Self { sizes, bit_costs })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn bit_costs(&self) -> &[u32] {
        &self.bit_costs
    }

    /// Number of layers `s`.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Offsets of class `x` (1-based) as the half-open-below interval `(lo, hi]`.
    pub fn class_interval(&self, x: usize) -> Result<(usize, usize)> {
        if x == 0 || x > self.sizes.len() {
            return Err(Error::LayerIndex {
                index: x,
                layers: self.sizes.len(),
            });
        }
        let lo = if x == 1 { 0 } else { self.sizes[x - 2] };
        Ok((lo, self.sizes[x - 1]))
    }

    /// 1-based class containing `offset`, or `None` when `offset` is 0 or
    /// larger than the last size.
    pub fn class_of(&self, offset: usize) -> Option<usize> {
        if offset == 0 {
            return None;
        }
        let idx = self.sizes.partition_point(|&size| size < offset);
        (idx < self.sizes.len()).then_some(idx + 1)
    }

    /// Geometric growth: `sw_i >= k · sw_{i-1}` for every `k_hat <= i < s`
    /// (1-based). `sw_0` does not exist, so a range reaching `i = 1` fails.
    pub fn growth_property_holds(&self, k: f64, k_hat: usize) -> bool {
        let s = self.sizes.len();
        (k_hat..s).all(|i| i >= 2 && self.sizes[i - 1] as f64 >= k * self.sizes[i - 2] as f64)
    }
}
