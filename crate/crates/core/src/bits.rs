//! MSB-first bit sink and source.
//!
//! Bits are packed from the most significant end of each byte; the final
//! partial byte is padded with zeros.

use crate::error::{Error, Result};

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    bytes: Vec<u8>,
    acc: u8,
    filled: u32,
    written: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts writing after an existing byte prefix (e.g. a header).
    pub fn with_prefix(prefix: Vec<u8>) -> Self {
        Self {
            bytes: prefix,
            ..Self::default()
        }
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.acc = (self.acc << 1) | bit as u8;
        self.filled += 1;
        self.written += 1;
        if self.filled == 8 {
            self.bytes.push(self.acc);
            self.acc = 0;
            self.filled = 0;
        }
    }

    /// Writes the low `count` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        for shift in (0..count).rev() {
            self.write_bit((value >> shift) & 1 == 1);
        }
    }

    /// Number of payload bits written so far (prefix excluded).
    pub fn bits_written(&self) -> u64 {
        self.written
    }

    pub fn finish(mut self) -> Vec<u8> {
        if self.filled > 0 {
            self.bytes.push(self.acc << (8 - self.filled));
        }
        self.bytes
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    bit: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, bit: 0 }
    }

    /// Position of the next bit to be read.
    pub fn position(&self) -> u64 {
        self.bit
    }

    pub fn remaining(&self) -> u64 {
        self.data.len() as u64 * 8 - self.bit
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        let byte = *self
            .data
            .get((self.bit / 8) as usize)
            .ok_or(Error::Truncated { bit: self.bit })?;
        let bit = (byte >> (7 - (self.bit % 8))) & 1 == 1;
        self.bit += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, count: u32) -> Result<u64> {
        debug_assert!(count <= 64);
        let mut value = 0u64;
        for _ in 0..count {
            value = (value << 1) | self.read_bit()? as u64;
        }
        Ok(value)
    }
}
