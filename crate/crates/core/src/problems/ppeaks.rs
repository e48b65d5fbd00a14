use rand::{Rng, RngCore};

use super::Problem;
use crate::ga::{Genome, OperatorConfig};
use crate::{seeded_rng, Error, Result};

/// `P` random `N`-bit peaks; fitness is the Hamming distance to the nearest one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPeaksInstance {
    peaks: Vec<Vec<u8>>,
    bits: usize,
    seed: u64,
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y) as usize).sum()
}

impl PPeaksInstance {
    /// Draws `peaks` strings of `bits` fair bits from the stream for `seed`.
    /// Identical arguments always give an identical instance.
    pub fn generate(peaks: usize, bits: usize, seed: u64) -> Result<Self> {
        if peaks < 1 || bits < 1 {
            return Err(Error::InvalidParameter(format!(
                "P-PEAKS needs P >= 1 and N >= 1 (got P={peaks}, N={bits})"
            )));
        }
        let mut rng = seeded_rng(seed, 0);
        let peaks = (0..peaks)
            .map(|_| (0..bits).map(|_| rng.random::<bool>() as u8).collect())
            .collect();
        Ok(Self { peaks, bits, seed })
    }

    pub fn from_peaks(peaks: Vec<Vec<u8>>, seed: u64) -> Result<Self> {
        let bits = peaks.first().map(Vec::len).unwrap_or(0);
        if bits == 0 {
            return Err(Error::InvalidParameter("P-PEAKS needs at least one non-empty peak".into()));
        }
        if let Some(bad) = peaks.iter().find(|p| p.len() != bits) {
            return Err(Error::LengthMismatch {
                left: bits,
                right: bad.len(),
            });
        }
        if peaks.iter().flatten().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("peak bits must be 0 or 1".into()));
        }
        Ok(Self { peaks, bits, seed })
    }

    pub fn peak_count(&self) -> usize {
        self.peaks.len()
    }

    pub fn bit_len(&self) -> usize {
        self.bits
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn peaks(&self) -> &[Vec<u8>] {
        &self.peaks
    }

    /// `min_i Hamming(x, Peak_i)`.
    pub fn fitness(&self, x: &[u8]) -> Result<f64> {
        if x.len() != self.bits {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.bits,
            });
        }
        Ok(self.min_distance(x) as f64)
    }

    fn min_distance(&self, x: &[u8]) -> usize {
        self.peaks
            .iter()
            .map(|peak| hamming(x, peak))
            .min()
            .unwrap_or(0)
    }

    /// Audit dump: header `P N seed`, then one line of `0`/`1` per peak.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.peaks.len(), self.bits, self.seed);
        for peak in &self.peaks {
            out.extend(peak.iter().map(|&b| if b == 1 { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty P-PEAKS dump"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(1, "header must be 'P N seed'"));
        }
        let num = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::parse(1, format!("{what} '{s}' is not an integer")))
        };
        let p = num(fields[0], "P")? as usize;
        let n = num(fields[1], "N")? as usize;
        let seed = num(fields[2], "seed")?;

        let mut peaks = Vec::with_capacity(p);
        for (line_no, line) in lines.by_ref() {
            if line.is_empty() {
                continue;
            }
            if peaks.len() == p {
                return Err(Error::parse(line_no, "more peak lines than P"));
            }
            if line.len() != n {
                return Err(Error::parse(line_no, format!("peak has {} bits, expected {n}", line.len())));
            }
            let bits = Genome::bits_from_str(line)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
            if let Genome::Bits(b) = bits {
                peaks.push(b);
            }
        }
        if peaks.len() != p {
            return Err(Error::parse(
                text.lines().count() + 1,
                format!("expected {p} peaks, found {}", peaks.len()),
            ));
        }
        Self::from_peaks(peaks, seed)
    }
}

impl Problem for PPeaksInstance {
    fn evaluate(&self, genome: &Genome) -> f64 {
        let bits = genome.as_bits().expect("P-PEAKS evaluates bit strings");
        debug_assert_eq!(bits.len(), self.bits);
        self.min_distance(bits) as f64
    }

    fn random_genome(&self, rng: &mut dyn RngCore) -> Genome {
        Genome::Bits((0..self.bits).map(|_| rng.random::<bool>() as u8).collect())
    }

    fn default_operators(&self) -> OperatorConfig {
        OperatorConfig::binary()
    }
}
