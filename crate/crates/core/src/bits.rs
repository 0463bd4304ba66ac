//! Bit-granular writer and reader. Bits are packed LSB-first inside each byte, so
//! writing an `m`-bit value and reading it back with the same width round-trips,
//! and whole bytes written on a byte boundary appear verbatim in the output.

use crate::error::{Error, Result};

/// Anything that can hand out a stream of bits (XOF output, a byte slice).
pub trait BitSource {
    /// Next `n <= 64` bits, first bit in the least significant position.
    fn take_bits(&mut self, n: usize) -> u64;

    fn take_bytes(&mut self, out: &mut [u8]) {
        for b in out.iter_mut() {
            *b = self.take_bits(8) as u8;
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    nbits: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bit_len(&self) -> usize {
        self.nbits
    }

    pub fn put_bits(&mut self, mut value: u64, mut n: usize) {
        debug_assert!(n <= 64);
        if n < 64 {
            value &= (1u64 << n) - 1;
        }
        while n > 0 {
            let used = self.nbits % 8;
            if used == 0 {
                self.bytes.push(0);
            }
            let room = 8 - used;
            let take = room.min(n);
            let chunk = (value & ((1u64 << take) - 1)) as u8;
            *self.bytes.last_mut().unwrap() |= chunk << used;
            value = if take == 64 { 0 } else { value >> take };
            n -= take;
            self.nbits += take;
        }
    }

    pub fn put_bytes(&mut self, data: &[u8]) {
        if self.nbits.is_multiple_of(8) {
            self.bytes.extend_from_slice(data);
            self.nbits += 8 * data.len();
        } else {
            for &b in data {
                self.put_bits(b as u64, 8);
            }
        }
    }

    /// Pads with zero bits to a byte boundary and returns the bytes.
    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

/// Reader over a byte slice. Overrunning the input yields zero bits and sets a
/// flag that [`BitReader::finish`] reports, which keeps field decoders infallible.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    overrun: bool,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0, overrun: false }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining_bits(&self) -> usize {
        (8 * self.data.len()).saturating_sub(self.pos)
    }

    pub fn read_vec(&mut self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.take_bytes(&mut out);
        out
    }

    /// Checks that the whole input was consumed and that padding bits are zero.
    pub fn finish(self) -> Result<()> {
        if self.overrun {
            return Err(Error::Parse("input truncated".into()));
        }
        let total = 8 * self.data.len();
        if total - self.pos >= 8 {
            return Err(Error::Parse(format!("{} trailing bytes", (total - self.pos) / 8)));
        }
        if self.pos < total {
            let last = self.data[self.data.len() - 1];
            if last >> (self.pos % 8) != 0 {
                return Err(Error::Parse("non-zero padding bits".into()));
            }
        }
        Ok(())
    }
}

impl BitSource for BitReader<'_> {
    fn take_bits(&mut self, n: usize) -> u64 {
        let mut out = 0u64;
        let mut got = 0;
        while got < n {
            let byte = self.pos / 8;
            if byte >= self.data.len() {
                self.overrun = true;
                self.pos += n - got;
                return out;
            }
            let off = self.pos % 8;
            let take = (8 - off).min(n - got);
            let chunk = ((self.data[byte] >> off) as u64) & ((1u64 << take) - 1);
            out |= chunk << got;
            got += take;
            self.pos += take;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_widths_round_trip() {
        let vals: Vec<(u64, usize)> = vec![(5, 3), (0x7fff_ffff, 31), (1, 1), (0xab, 8), (u64::MAX, 64), (0, 7)];
        let mut w = BitWriter::new();
        for &(v, n) in &vals {
            w.put_bits(v, n);
        }
        let total: usize = vals.iter().map(|v| v.1).sum();
        assert_eq!(w.bit_len(), total);
        let bytes = w.finish();
        assert_eq!(bytes.len(), total.div_ceil(8));
        let mut r = BitReader::new(&bytes);
        for &(v, n) in &vals {
            assert_eq!(r.take_bits(n), v);
        }
        r.finish().unwrap();
    }

    #[test]
    fn aligned_bytes_are_verbatim() {
        let mut w = BitWriter::new();
        w.put_bytes(&[1, 2, 3]);
        w.put_bits(0x1, 4);
        assert_eq!(w.finish(), vec![1, 2, 3, 1]);
    }

    #[test]
    fn finish_rejects_garbage() {
        let data = [0xffu8, 0x10];
        let mut r = BitReader::new(&data);
        r.take_bits(12);
        assert!(r.clone().finish().is_err()); // bit 12 set in padding
        let mut r2 = BitReader::new(&data[..1]);
        r2.take_bits(12);
        assert!(r2.finish().is_err());
        let data = [0xffu8, 0x0f, 0x00];
        let mut r3 = BitReader::new(&data);
        r3.take_bits(12);
        assert!(r3.finish().is_err()); // trailing byte
    }
}
