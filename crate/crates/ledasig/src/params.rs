//! System parameters and the nine published instances.

use std::fmt;

use crate::error::{Error, Result};

/// Full parameter record of a LEDAsig instance.
///
/// `n0`, `r0` count circulant blocks of size `p`; `z` bounds the rank of the
/// dense part of `Q`; `m_t` and `m_s` are the row weights of the sparse part of
/// `Q` and of `S`; `w` is the syndrome weight; `w_g` the row weight of the
/// secret generator matrix and `m_g` the number of its rows summed per
/// codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SysParams {
    pub n0: usize,
    pub r0: usize,
    pub p: usize,
    pub z: usize,
    pub m_t: usize,
    pub m_s: usize,
    pub w: usize,
    pub w_g: usize,
    pub m_g: usize,
    pub category: u8,
}

impl SysParams {
    #[allow(clippy::too_many_arguments)]
    const fn table(n0: usize, r0: usize, p: usize, z: usize, m_s: usize, w: usize, w_g: usize, m_g: usize, category: u8) -> Self {
        Self { n0, r0, p, z, m_t: 1, m_s, w, w_g, m_g, category }
    }

    /// Checked constructor (`m_t` is fixed to 1).
    #[allow(clippy::too_many_arguments)]
    pub fn new(n0: usize, r0: usize, p: usize, z: usize, m_s: usize, w: usize, w_g: usize, m_g: usize, category: u8) -> Result<Self> {
        let s = Self::table(n0, r0, p, z, m_s, w, w_g, m_g, category);
        s.validate()?;
        Ok(s)
    }

    /// A small instance for tests and examples. It respects every structural
    /// constraint of the published parameter sets.
    pub const fn toy() -> Self {
        Self::table(11, 7, 5, 2, 3, 2, 5, 2, 1)
    }

    /// Structural requirements the implementation depends on.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        if self.p == 0 || self.r0 == 0 || self.n0 <= self.r0 {
            return bad("need p > 0 and n0 > r0 > 0");
        }
        if self.m_t != 1 {
            return bad("only m_t = 1 is supported");
        }
        if self.m_s % 2 == 0 || self.m_s > self.n0 {
            return bad("m_s must be odd and at most n0");
        }
        if self.z >= self.r0 {
            return bad("z must be below r0");
        }
        if self.w_g == 0 || self.w_g - 1 > self.r0 {
            return bad("w_g - 1 non-null blocks must fit in a block row of V");
        }
        if self.w > self.r() || self.m_g == 0 || self.m_g > self.k() {
            return bad("weights exceed their vector lengths");
        }
        if !(1..=5).contains(&self.category) {
            return bad("category must be 1..=5");
        }
        if self.p > u32::MAX as usize || self.n0 > u16::MAX as usize {
            return bad("block size or count too large for the wire format");
        }
        Ok(())
    }

    /// Design constraints satisfied by the published instances that the
    /// implementation itself does not need. Returns a description per violation.
    pub fn design_violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !is_prime(self.r0) {
            v.push(format!("r0 = {} is not prime", self.r0));
        }
        if !is_prime(self.p) {
            v.push(format!("p = {} is not prime", self.p));
        }
        if !is_prime(self.n0) || multiplicative_order_of_two(self.n0) != Some(self.n0 - 1) {
            v.push(format!("2 is not primitive modulo n0 = {}", self.n0));
        }
        if self.w_g != 2 * self.w + 1 {
            v.push(format!("w_g = {} differs from 2w + 1", self.w_g));
        }
        if self.p * (2 * self.w + 1) >= self.r() {
            v.push("p is not below r / (2w + 1)".to_string());
        }
        v
    }

    pub fn k0(&self) -> usize {
        self.n0 - self.r0
    }
    pub fn n(&self) -> usize {
        self.n0 * self.p
    }
    pub fn r(&self) -> usize {
        self.r0 * self.p
    }
    pub fn k(&self) -> usize {
        self.k0() * self.p
    }

    /// Target security level in bits.
    pub fn security_bits(&self) -> u32 {
        match self.category {
            1 | 2 => 128,
            3 => 192,
            _ => 256,
        }
    }

    /// Seed length in bytes.
    pub fn seed_len(&self) -> usize {
        match self.category {
            1 => 32,
            2 | 3 => 48,
            _ => 64,
        }
    }

    /// Message digest length in bytes.
    pub fn digest_len(&self) -> usize {
        self.seed_len()
    }

    /// Nominal codeword weight `m_g * w_g`.
    pub fn codeword_weight(&self) -> usize {
        self.m_g * self.w_g
    }

    /// Largest admissible signature weight `(w + m_g w_g) m_s`.
    pub fn sigma_weight_bound(&self) -> usize {
        (self.w + self.codeword_weight()) * self.m_s
    }
}

impl fmt::Display for SysParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n0={} r0={} p={} z={} m_s={} w={} w_g={} m_g={} cat={}",
            self.n0, self.r0, self.p, self.z, self.m_s, self.w, self.w_g, self.m_g, self.category
        )
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn multiplicative_order_of_two(n: usize) -> Option<usize> {
    if n < 3 || n % 2 == 0 {
        return None;
    }
    let mut x = 2 % n;
    for k in 1..n {
        if x == 1 {
            return Some(k);
        }
        x = x * 2 % n;
    }
    None
}

/// The published parameter sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    A3,
    A6,
    Alpha3,
    B3,
    B6,
    Beta3,
    C3,
    C6,
    Gamma3,
}

impl Instance {
    pub const ALL: [Instance; 9] = [
        Instance::A3,
        Instance::A6,
        Instance::Alpha3,
        Instance::B3,
        Instance::B6,
        Instance::Beta3,
        Instance::C3,
        Instance::C6,
        Instance::Gamma3,
    ];

    pub fn params(self) -> SysParams {
        use Instance::*;
        match self {
            A3 => SysParams::table(227, 89, 127, 2, 9, 42, 85, 11, 1),
            A6 => SysParams::table(139, 83, 383, 2, 9, 38, 77, 12, 1),
            Alpha3 => SysParams::table(149, 89, 509, 2, 23, 40, 81, 13, 1),
            B3 => SysParams::table(293, 149, 251, 2, 13, 54, 109, 16, 3),
            B6 => SysParams::table(179, 113, 1279, 2, 23, 46, 93, 17, 3),
            Beta3 => SysParams::table(173, 103, 1663, 2, 43, 48, 97, 22, 3),
            C3 => SysParams::table(269, 149, 571, 2, 17, 72, 145, 20, 5),
            C6 => SysParams::table(211, 131, 3449, 2, 43, 54, 109, 24, 5),
            Gamma3 => SysParams::table(293, 139, 3121, 2, 69, 66, 133, 32, 5),
        }
    }

    /// ASCII name (`alpha3`, not the Greek letter).
    pub fn name(self) -> &'static str {
        use Instance::*;
        match self {
            A3 => "a3",
            A6 => "a6",
            Alpha3 => "alpha3",
            B3 => "b3",
            B6 => "b6",
            Beta3 => "beta3",
            C3 => "c3",
            C6 => "c6",
            Gamma3 => "gamma3",
        }
    }

    /// Case-insensitive; Greek-letter spellings are accepted too.
    pub fn from_name(s: &str) -> Option<Self> {
        let s = s.trim().to_lowercase().replace('α', "alpha").replace('β', "beta").replace('γ', "gamma");
        Self::ALL.into_iter().find(|i| i.name() == s)
    }

    /// Wire identifier.
    pub fn id(self) -> u8 {
        Self::ALL.iter().position(|&i| i == self).unwrap() as u8
    }

    pub fn from_id(id: u8) -> Option<Self> {
        Self::ALL.get(id as usize).copied()
    }

    /// The instance whose parameters equal `p`, if any.
    pub fn of(p: &SysParams) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.params() == *p)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
