//! Dense univariate polynomials over the rationals, used only to reduce
//! fractions in the base variable.

use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UPoly(pub Vec<BigRational>);

impl UPoly {
    pub fn trim(mut self) -> Self {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn lead(&self) -> &BigRational {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let lc = self.lead().clone();
        UPoly(self.0.into_iter().map(|c| c / &lc).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (UPoly(Vec::new()), self.clone());
        }
        let dl = d.lead().clone();
        let dd = d.degree();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly(quot).trim(), UPoly(rem).trim())
    }

    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut x = a.clone().trim();
        let mut y = b.clone().trim();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }
}
