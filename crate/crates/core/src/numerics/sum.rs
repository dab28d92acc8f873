/// Compensated (Kahan–Babuška–Neumaier) accumulator.
///
/// Results depend only on the order of `add` calls, so callers that feed
/// values in a fixed index order get bitwise-reproducible totals.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::new();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

/// Unevaluated sum `hi + lo` carrying about 106 bits, for short products
/// and sums whose cancellation would otherwise eat double precision.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl DoubleDouble {
    pub fn new(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn product(a: f64, b: f64) -> Self {
        let p = a * b;
        Self { hi: p, lo: a.mul_add(b, -p) }
    }

    #[inline]
    pub fn mul_f64(self, y: f64) -> Self {
        let p = Self::product(self.hi, y);
        let (hi, lo) = two_sum(p.hi, p.lo + self.lo * y);
        Self { hi, lo }
    }

    #[inline]
    pub fn add(self, y: Self) -> Self {
        let (s, e) = two_sum(self.hi, y.hi);
        let (hi, lo) = two_sum(s, e + self.lo + y.lo);
        Self { hi, lo }
    }

    pub fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `a·d − b·c` with both products exact before the subtraction.
pub fn det2_exact(a: f64, b: f64, c: f64, d: f64) -> f64 {
    DoubleDouble::product(a, d).add(DoubleDouble::product(b, c).neg()).value()
}
