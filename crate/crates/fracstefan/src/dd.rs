//! Double-double arithmetic: an unevaluated sum of two `f64`s giving
//! roughly 32 significant decimal digits.
//!
//! The alternating series this crate sums suffer cancellation that grows
//! with the argument, so the working precision of the accumulator and of
//! the term recurrence must be well below `f64` epsilon. Only the small
//! set of operations the series engine needs is implemented here.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, mut s2) = two_sum(self.hi, other.hi);
        s2 += self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, other: f64) -> Dd {
        let (s1, mut s2) = two_sum(self.hi, other);
        s2 += self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, other.hi);
        p2 += self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, other);
        p2 += self.lo * other;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    /// Natural log via one Newton correction of the f64 estimate.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let y0 = self.hi.ln();
        // y1 = y0 + x * exp(-y0) - 1
        let e = exp_dd(Dd::from_f64(-y0));
        let corr = self.mul(e).add_f64(-1.0);
        Dd::from_f64(y0).add(corr)
    }

    pub fn exp(self) -> Dd {
        exp_dd(self)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, mut n: u64) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

const LN_2: Dd = Dd { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };

fn exp_dd(a: Dd) -> Dd {
    if a.hi > 700.0 {
        return Dd::from_f64(f64::INFINITY);
    }
    if a.hi < -746.0 {
        return Dd::ZERO;
    }
    let k = (a.hi / LN_2.hi).round();
    let r = a.sub(LN_2.mul_f64(k));
    // Taylor on |r| <= ln2/2
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for n in 1..40 {
        // dd division: 1/n is not exactly representable for most n
        term = term.mul(r).div(Dd::from_f64(n as f64));
        sum = sum.add(term);
        if term.hi.abs() < 1e-35 * sum.hi.abs() {
            break;
        }
    }
    // scale by 2^k
    let scale = (k as i32).max(-1022).min(1023);
    let factor = f64::powi(2.0, scale);
    Dd { hi: sum.hi * factor, lo: sum.lo * factor }
}

const HALF_LN_2PI: Dd = Dd { hi: 0.918_938_533_204_672_8, lo: -3.878_294_158_067_241_4e-17 };

// B_{2k} / (2k (2k-1)) for k = 1..=13
const STIRLING: [Dd; 13] = [
    Dd { hi: 0.083_333_333_333_333_33, lo: 4.625_929_269_271_485e-18 },
    Dd { hi: -0.002_777_777_777_777_778, lo: 1.060_108_790_874_715_4e-19 },
    Dd { hi: 0.000_793_650_793_650_793_7, lo: 6.883_823_317_368_282e-22 },
    Dd { hi: -0.000_595_238_095_238_095_3, lo: 5.369_382_187_547_26e-20 },
    Dd { hi: 0.000_841_750_841_750_841_7, lo: 3.687_017_488_923_769_4e-20 },
    Dd { hi: -0.001_917_526_917_526_917_6, lo: 1.067_570_277_687_247_5e-19 },
    Dd { hi: 0.006_410_256_410_256_41, lo: 2.224_004_456_380_521_7e-19 },
    Dd { hi: -0.029_550_653_594_771_242, lo: 4.861_760_957_508_855e-19 },
    Dd { hi: 0.179_644_372_368_830_57, lo: -6.401_600_482_710_946e-19 },
    Dd { hi: -1.392_432_216_905_901_1, lo: 1.583_705_698_923_030_3e-17 },
    Dd { hi: 13.402_864_044_168_393, lo: -6.154_114_101_993_966e-16 },
    Dd { hi: -156.848_284_626_002_03, lo: 9.391_823_141_715_389e-15 },
    Dd { hi: 2_193.103_333_333_333_5, lo: -1.333_925_562_600_294_8e-13 },
];

/// ln Gamma(x) for x > 0 in double-double precision.
///
/// Stirling series after lifting the argument above 32; the truncated
/// tail is below 1e-35 relative there.
pub fn lgamma_dd(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    let mut shift = Dd::ZERO;
    let mut y = x;
    while y.hi < 32.0 {
        shift = shift.add(y.ln());
        y = y.add_f64(1.0);
    }
    let ln_y = y.ln();
    let mut s = y.sub(Dd::from_f64(0.5)).mul(ln_y).sub(y).add(HALF_LN_2PI);
    let y2 = y.mul(y).recip();
    let mut p = y.recip();
    for c in STIRLING.iter() {
        s = s.add(c.mul(p));
        p = p.mul(y2);
    }
    s.sub(shift)
}
