use lie_core::rational::{fmt_q, to_f64, zero};
use lie_core::Q;
use num_traits::Zero;
use poly::{Ambient, Mono, Poly};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use weights::WeightValue;

/// `constant + sum_s c_s * w_s`, with `w_s` an untabulated weight named by
/// its graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinForm {
    pub constant: Q,
    pub symbols: BTreeMap<String, Q>,
}

impl LinForm {
    pub fn constant(c: Q) -> Self {
        Self {
            constant: c,
            symbols: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str, c: Q) -> Self {
        let mut s = Self::default();
        if !c.is_zero() {
            s.symbols.insert(name.to_string(), c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.symbols.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn add_scaled(&mut self, other: &LinForm, c: &Q) {
        self.constant += &other.constant * c;
        for (k, v) in &other.symbols {
            let e = self.symbols.entry(k.clone()).or_insert_with(zero);
            *e += v * c;
            if e.is_zero() {
                self.symbols.remove(k);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> LinForm {
        let mut out = LinForm::default();
        out.add_scaled(self, c);
        out
    }

    /// Estimate and variance given values for the symbols.
    pub fn evaluate(&self, values: &BTreeMap<String, WeightValue>) -> (f64, f64) {
        let mut est = to_f64(&self.constant);
        let mut var = 0.0;
        for (k, c) in &self.symbols {
            let w = &values[k];
            let c = to_f64(c);
            est += c * w.estimate();
            var += c * c * w.stderr() * w.stderr();
        }
        (est, var)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_q(&self.constant))?;
        for (k, v) in &self.symbols {
            write!(f, " + {}*w[{}]", fmt_q(v), k)?;
        }
        Ok(())
    }
}

/// A polynomial whose coefficients are linear in the untabulated weights.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    amb: Arc<Ambient>,
    terms: BTreeMap<Mono, LinForm>,
}

impl SymPoly {
    pub fn zero(amb: &Arc<Ambient>) -> Self {
        Self {
            amb: amb.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut s = Self::zero(p.ambient());
        s.add_poly(p, &LinForm::constant(lie_core::rational::one()));
        s
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn terms(&self) -> &BTreeMap<Mono, LinForm> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += p * w`.
    pub fn add_poly(&mut self, p: &Poly, w: &LinForm) {
        for (m, c) in p.terms() {
            let e = self.terms.entry(m.clone()).or_default();
            e.add_scaled(w, c);
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn add(&mut self, other: &SymPoly) {
        for (m, f) in &other.terms {
            let e = self.terms.entry(m.clone()).or_default();
            e.add_scaled(f, &lie_core::rational::one());
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> SymPoly {
        let mut out = SymPoly::zero(&self.amb);
        for (m, f) in &self.terms {
            let g = f.scale(c);
            if !g.is_zero() {
                out.terms.insert(m.clone(), g);
            }
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms
            .values()
            .flat_map(|f| f.symbols.keys().cloned())
            .collect()
    }

    /// The polynomial when no untabulated weight survives.
    pub fn to_exact(&self) -> Option<Poly> {
        let mut p = Poly::zero(&self.amb);
        for (m, f) in &self.terms {
            if !f.is_constant() {
                return None;
            }
            p.add_term(m.clone(), f.constant.clone());
        }
        Some(p)
    }

    /// Part independent of the untabulated weights.
    pub fn constant_part(&self) -> Poly {
        let mut p = Poly::zero(&self.amb);
        for (m, f) in &self.terms {
            p.add_term(m.clone(), f.constant.clone());
        }
        p
    }

    /// Coefficient polynomial of one untabulated weight.
    pub fn symbol_part(&self, name: &str) -> Poly {
        let mut p = Poly::zero(&self.amb);
        for (m, f) in &self.terms {
            if let Some(c) = f.symbols.get(name) {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn evaluate(&self, values: &BTreeMap<String, WeightValue>) -> NumPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, f)| {
                let (e, v) = f.evaluate(values);
                (m.clone(), (e, v.sqrt()))
            })
            .collect();
        NumPoly {
            amb: self.amb.clone(),
            terms,
        }
    }
}

/// Floating coefficients with a propagated standard error each.
#[derive(Clone, Debug, PartialEq)]
pub struct NumPoly {
    amb: Arc<Ambient>,
    terms: BTreeMap<Mono, (f64, f64)>,
}

impl NumPoly {
    pub fn terms(&self) -> &BTreeMap<Mono, (f64, f64)> {
        &self.terms
    }

    /// Largest `|coefficient of self - exact| / stderr` violation: returns
    /// the largest coefficient deviation together with its stderr.
    pub fn worst_deviation(&self, exact: &Poly) -> (f64, f64) {
        let mut monos: BTreeSet<&Mono> = self.terms.keys().collect();
        monos.extend(exact.terms().map(|(m, _)| m));
        let mut worst = (0.0, 0.0);
        for m in monos {
            let (e, s) = self.terms.get(m).copied().unwrap_or((0.0, 0.0));
            let d = (e - to_f64(&exact.coeff(m))).abs();
            if d > worst.0 {
                worst = (d, s);
            }
        }
        worst
    }

    /// Largest per-coefficient deviation from `exact` in units of its own
    /// stderr; coefficients known exactly must match to `1e-12`.
    pub fn max_sigma(&self, exact: &Poly) -> f64 {
        let mut monos: BTreeSet<&Mono> = self.terms.keys().collect();
        monos.extend(exact.terms().map(|(m, _)| m));
        let mut worst: f64 = 0.0;
        for m in monos {
            let (e, s) = self.terms.get(m).copied().unwrap_or((0.0, 0.0));
            let d = (e - to_f64(&exact.coeff(m))).abs();
            let ratio = if s > 0.0 {
                d / s
            } else if d <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            worst = worst.max(ratio);
        }
        worst
    }
}

impl fmt::Display for NumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.amb.names();
        for (k, (m, (e, s))) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{e:.6}(+-{s:.6})")?;
            for (i, &p) in m.exps.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*{}", names[i])?,
                    _ => write!(f, "*{}^{}", names[i], p)?,
                }
            }
            match m.eps {
                0 => {}
                1 => write!(f, "*eps")?,
                k => write!(f, "*eps^{k}")?,
            }
        }
        Ok(())
    }
}

/// A resolved series value.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluated {
    Exact(Poly),
    Numeric(NumPoly),
}

impl fmt::Display for Evaluated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluated::Exact(p) => write!(f, "{p}"),
            Evaluated::Numeric(p) => write!(f, "{p}"),
        }
    }
}
