use calculus::LinForm;
use lie_core::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Polynomial in the untabulated weights, used to bound ranks without
/// knowing their values.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct WPoly(BTreeMap<Vec<u32>, Q>);

impl WPoly {
    pub fn from_linform(l: &LinForm, index: &BTreeMap<String, usize>) -> Self {
        let n = index.len();
        let mut out = BTreeMap::new();
        if !l.constant.is_zero() {
            out.insert(vec![0; n], l.constant.clone());
        }
        for (name, c) in &l.symbols {
            let mut e = vec![0; n];
            e[index[name]] = 1;
            out.insert(e, c.clone());
        }
        Self(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The value when the polynomial has no weight dependence.
    pub fn as_constant(&self) -> Option<&Q> {
        match self.0.iter().next() {
            None => None,
            Some((e, c)) if self.0.len() == 1 && e.iter().all(|&x| x == 0) => Some(c),
            _ => None,
        }
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &WPoly, b: &WPoly) {
        for (ea, ca) in &a.0 {
            for (eb, cb) in &b.0 {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let v = self.0.entry(e.clone()).or_insert_with(Q::zero);
                *v -= ca * cb;
                if v.is_zero() {
                    self.0.remove(&e);
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> WPoly {
        WPoly(self.0.iter().map(|(e, x)| (e.clone(), x * c)).collect())
    }
}
