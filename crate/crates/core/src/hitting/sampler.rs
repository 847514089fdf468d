use rand::RngCore;

use super::HittingError;

/// A source of random bits that counts what it hands out. Either backed by
/// an RNG (unbounded) or by a fixed bit string.
pub struct BitStream<'a> {
    source: Source<'a>,
    consumed: u64,
}

enum Source<'a> {
    Rng(&'a mut dyn RngCore),
    Fixed { bits: Vec<bool>, pos: usize },
}

impl<'a> BitStream<'a> {
    pub fn from_rng(rng: &'a mut dyn RngCore) -> Self {
        BitStream {
            source: Source::Rng(rng),
            consumed: 0,
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitStream {
            source: Source::Fixed { bits, pos: 0 },
            consumed: 0,
        }
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    /// Next `m ≤ 128` bits as an integer, most significant first.
    pub fn take(&mut self, m: u32) -> Result<u128, HittingError> {
        assert!(m <= 128);
        let v = match &mut self.source {
            Source::Rng(rng) => {
                let hi = rng.next_u64() as u128;
                let lo = rng.next_u64() as u128;
                let full = (hi << 64) | lo;
                if m == 128 {
                    full
                } else {
                    full & ((1u128 << m) - 1)
                }
            }
            Source::Fixed { bits, pos } => {
                if *pos + m as usize > bits.len() {
                    return Err(HittingError::InsufficientRandomness {
                        consumed: self.consumed,
                    });
                }
                let v = bits[*pos..*pos + m as usize]
                    .iter()
                    .fold(0u128, |acc, &b| (acc << 1) | b as u128);
                *pos += m as usize;
                v
            }
        };
        self.consumed += m as u64;
        Ok(v)
    }
}

/// `t` independent uniform samples from `{0, .., domain-1}`. Power-of-two
/// domains use exactly `log2(domain)` bits per sample; others use rejection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependentSampler {
    pub domain: u128,
}

impl IndependentSampler {
    pub fn new(domain: u128) -> Result<Self, HittingError> {
        if domain == 0 {
            return Err(HittingError::InvalidParams("empty sampler domain".into()));
        }
        Ok(IndependentSampler { domain })
    }

    /// Bits per attempt: `⌈log2(domain)⌉`.
    pub fn bits_per_draw(&self) -> u32 {
        if self.domain <= 1 {
            0
        } else {
            128 - (self.domain - 1).leading_zeros()
        }
    }

    pub fn draw_one(&self, bits: &mut BitStream<'_>) -> Result<u128, HittingError> {
        let m = self.bits_per_draw();
        loop {
            let v = bits.take(m)?;
            if v < self.domain {
                return Ok(v);
            }
        }
    }

    pub fn draw(&self, t: usize, bits: &mut BitStream<'_>) -> Result<Vec<u128>, HittingError> {
        (0..t).map(|_| self.draw_one(bits)).collect()
    }
}

/// Averaging-sampler parameters for independent sampling over `{0,1}^m`:
/// `t = ⌈ln(2/δ) / (2ε²)⌉` samples by a Chernoff–Hoeffding bound, `t·m` bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerParams {
    pub domain_bits: u32,
    pub eps: f64,
    pub delta: f64,
    pub t: usize,
    pub r: u64,
}

impl SamplerParams {
    pub fn new(domain_bits: u32, eps: f64, delta: f64) -> Result<Self, HittingError> {
        if !(delta > 0.0 && delta <= eps && eps < 1.0) || domain_bits > 128 {
            return Err(HittingError::InvalidParams(format!(
                "need 0 < delta <= eps < 1 and m <= 128 (m={domain_bits}, eps={eps}, delta={delta})"
            )));
        }
        let t = ((2.0 / delta).ln() / (2.0 * eps * eps)).ceil().max(1.0) as usize;
        Ok(SamplerParams {
            domain_bits,
            eps,
            delta,
            t,
            r: t as u64 * domain_bits as u64,
        })
    }

    pub fn draw(&self, bits: &mut BitStream<'_>) -> Result<Vec<u128>, HittingError> {
        let domain = if self.domain_bits == 128 {
            u128::MAX
        } else {
            1u128 << self.domain_bits
        };
        let sampler = IndependentSampler { domain };
        if self.domain_bits == 128 {
            (0..self.t).map(|_| bits.take(128)).collect()
        } else {
            sampler.draw(self.t, bits)
        }
    }
}
