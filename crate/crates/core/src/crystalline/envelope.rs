use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{binomial, GroundRing, Scalar};
use crate::model::{Exponent, LeadingPower, Polynomial, Presentation};

/// Basis word `x^α·γ^Q(f)·dx_J` of the crystalline complex. `J` is a bit
/// set of variables; the word is a 0-form when `J` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub alpha: Vec<u32>,
    pub q: Vec<u32>,
    pub forms: u32,
}

impl Word {
    pub fn weight(&self) -> u32 {
        self.q.iter().sum()
    }

    pub fn form_degree(&self) -> u32 {
        self.forms.count_ones()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.weight(), &self.q, self.forms, Exponent(self.alpha.clone())).cmp(&(
            other.weight(),
            &other.q,
            other.forms,
            Exponent(other.alpha.clone()),
        ))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the crystalline complex: a combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    terms: BTreeMap<Word, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn word(w: Word) -> Self {
        let mut f = Form::zero();
        f.terms.insert(w, Scalar::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, ring: &GroundRing, w: Word, c: &Scalar) {
        let v = ring.normalize(self.coefficient(&w) + c);
        if v.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, v);
        }
    }
}

#[derive(Clone, Debug)]
enum Kind {
    /// Finite quasi-monic presentation: words with standard `α`.
    QuasiMonic(Vec<LeadingPower>),
    /// No variables and one constant relation `c`; the envelope is the
    /// presented module `⊕ k·γ_q / (c·γ_q − (q+1)·γ_{q+1})`.
    Constant(Scalar),
}

/// Divided-power envelope of `(k[x], (f))` for a regular sequence `f`,
/// with the γ-filtration by total weight `|Q|`.
#[derive(Clone, Debug)]
pub struct Envelope {
    presentation: Presentation,
    kind: Kind,
    /// Bounds `α_i < m_i` of the standard monomials.
    bounds: Vec<u32>,
}

/// Bound on the γ-weight of enumerated words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightWindow {
    AtMost(u32),
    Exactly(u32),
}

impl Envelope {
    pub fn new(p: &Presentation) -> Result<Self> {
        if p.nvars() == 0 && p.relations.len() == 1 {
            let f = &p.relations[0];
            let c = f.coefficient(&[]);
            if c.is_zero() {
                return Err(Error::NotQuasiMonic("the zero relation is not regular".into()));
            }
            return Ok(Envelope {
                presentation: p.clone(),
                kind: Kind::Constant(c),
                bounds: Vec::new(),
            });
        }
        let lead = p.finite_leading_powers()?.to_vec();
        let mut bounds = vec![0; p.nvars()];
        for l in &lead {
            bounds[l.variable] = l.exponent;
        }
        Ok(Envelope {
            presentation: p.clone(),
            kind: Kind::QuasiMonic(lead),
            bounds,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn ring(&self) -> &GroundRing {
        &self.presentation.ring
    }

    pub fn nvars(&self) -> usize {
        self.presentation.nvars()
    }

    pub fn nrels(&self) -> usize {
        self.presentation.relations.len()
    }

    /// The constant of a constant-relation envelope.
    pub fn constant(&self) -> Option<&Scalar> {
        match &self.kind {
            Kind::Constant(c) => Some(c),
            Kind::QuasiMonic(_) => None,
        }
    }

    pub fn one(&self) -> Word {
        Word {
            alpha: vec![0; self.nvars()],
            q: vec![0; self.nrels()],
            forms: 0,
        }
    }

    /// `γ_n(f_l)`.
    pub fn gamma(&self, l: usize, n: u32) -> Word {
        let mut w = self.one();
        w.q[l] = n;
        w
    }

    pub fn x(&self, alpha: &[u32]) -> Word {
        let mut w = self.one();
        w.alpha = alpha.to_vec();
        w
    }

    pub fn dx(&self, i: usize) -> Word {
        let mut w = self.one();
        w.forms = 1 << i;
        w
    }

    /// Words `x^α γ^Q(f)` with standard `α`, γ-weight in the window and
    /// `|α| ≤ poly_bound`, in a fixed order.
    pub fn envelope_slice(&self, weight: WeightWindow, poly_bound: Option<u32>) -> Vec<Word> {
        let (lo, hi) = match weight {
            WeightWindow::AtMost(n) => (0, n),
            WeightWindow::Exactly(n) => (n, n),
        };
        let mut out = Vec::new();
        for w in lo..=hi {
            for q in compositions(w, self.nrels()) {
                for alpha in self.standard_monomials() {
                    if poly_bound.is_some_and(|b| alpha.iter().sum::<u32>() > b) {
                        continue;
                    }
                    out.push(Word {
                        alpha,
                        q: q.clone(),
                        forms: 0,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Words of form degree `j` and γ-weight in the window.
    pub fn words(&self, j: u32, weight: WeightWindow) -> Vec<Word> {
        let mut out = Vec::new();
        for form in subsets(self.nvars(), j) {
            for mut w in self.envelope_slice(weight, None) {
                w.forms = form;
                out.push(w);
            }
        }
        out.sort();
        out
    }

    fn standard_monomials(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for &b in &self.bounds {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..b).map(move |k| {
                        let mut v = e.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Product of two words, in normal form.
    pub fn mul_words(&self, a: &Word, b: &Word) -> Form {
        let ring = self.ring();
        if a.forms & b.forms != 0 {
            return Form::zero();
        }
        let mut c = Scalar::one();
        // Moving each dx of b past the dx of a with larger index.
        let swaps: u32 = (0..32)
            .filter(|i| b.forms >> i & 1 == 1)
            .map(|i| (a.forms >> (i + 1)).count_ones())
            .sum();
        if swaps % 2 == 1 {
            c = -c;
        }
        let mut q = Vec::with_capacity(a.q.len());
        for (x, y) in a.q.iter().zip(&b.q) {
            c *= Scalar::from_integer(binomial(u64::from(x + y), u64::from(*x)));
            q.push(x + y);
        }
        let alpha = a.alpha.iter().zip(&b.alpha).map(|(x, y)| x + y).collect();
        let mut raw = BTreeMap::new();
        raw.insert((Exponent(alpha), q, a.forms | b.forms), ring.normalize(c));
        self.normal_form(raw)
    }

    pub fn add(&self, a: &Form, b: &Form) -> Form {
        let mut out = a.clone();
        for (w, c) in b.terms() {
            out.add_term(self.ring(), w.clone(), c);
        }
        out
    }

    pub fn scale(&self, a: &Form, c: &Scalar) -> Form {
        let mut out = Form::zero();
        for (w, v) in a.terms() {
            out.add_term(self.ring(), w.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        let mut out = Form::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                for (w, c) in self.mul_words(wa, wb).terms() {
                    out.add_term(self.ring(), w.clone(), &(ca * cb * c));
                }
            }
        }
        out
    }

    /// Rewrites `x_i^{m_i} = u⁻¹(γ_1(f_l) − h_l)` until every `α` is
    /// standard; largest graded-lex `α` first.
    fn normal_form(&self, mut raw: BTreeMap<(Exponent, Vec<u32>, u32), Scalar>) -> Form {
        let ring = self.ring();
        let mut out = Form::zero();
        let lead = match &self.kind {
            Kind::QuasiMonic(lead) => lead,
            Kind::Constant(_) => {
                for ((alpha, q, forms), c) in raw {
                    out.add_term(
                        ring,
                        Word {
                            alpha: alpha.0,
                            q,
                            forms,
                        },
                        &c,
                    );
                }
                return out;
            }
        };
        while let Some(((alpha, q, forms), c)) = raw.pop_last() {
            let c = ring.normalize(c);
            if c.is_zero() {
                continue;
            }
            let hit = lead.iter().enumerate().find(|(_, l)| alpha.0[l.variable] >= l.exponent);
            let Some((l, lp)) = hit else {
                out.add_term(
                    ring,
                    Word {
                        alpha: alpha.0,
                        q,
                        forms,
                    },
                    &c,
                );
                continue;
            };
            let inv = ring.inverse(&lp.unit).expect("leading coefficient is a unit");
            let mut base = alpha.0.clone();
            base[lp.variable] -= lp.exponent;
            let mut push = |key: (Exponent, Vec<u32>, u32), v: Scalar| {
                let e = raw.entry(key).or_insert_with(Scalar::zero);
                *e += v;
            };
            let mut q_up = q.clone();
            q_up[l] += 1;
            push(
                (Exponent(base.clone()), q_up, forms),
                &c * &inv * Scalar::from_integer(BigInt::from(q[l] + 1)),
            );
            let f = &self.presentation.relations[l];
            for (t, ct) in f.terms() {
                if t.0 == lead_exponent(lp, t.0.len()) {
                    continue;
                }
                let mut e = t.0.clone();
                for (a, b) in e.iter_mut().zip(&base) {
                    *a += b;
                }
                push((Exponent(e), q.clone(), forms), -(&c * &inv * ct));
            }
        }
        out
    }

    /// Normal form of a polynomial coefficient times a word.
    fn times_polynomial(
        &self,
        f: &Polynomial,
        w: &Word,
        scale: &Scalar,
    ) -> BTreeMap<(Exponent, Vec<u32>, u32), Scalar> {
        let mut raw = BTreeMap::new();
        for (t, c) in f.terms() {
            let alpha = t.0.iter().zip(&w.alpha).map(|(a, b)| a + b).collect();
            let e: &mut Scalar = raw
                .entry((Exponent(alpha), w.q.clone(), w.forms))
                .or_insert_with(Scalar::zero);
            *e += c * scale;
        }
        raw
    }

    /// `dx_i ∧ w`, with its sign, or `None` when `dx_i` already occurs.
    fn wedge_dx(&self, i: usize, w: &Word) -> Option<(Word, Scalar)> {
        if w.forms >> i & 1 == 1 {
            return None;
        }
        let below = (w.forms & ((1u32 << i) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let mut out = w.clone();
        out.forms |= 1 << i;
        Some((out, sign))
    }

    /// The crystalline differential: `d̄(x^α γ^Q dx_J) = d(x^α)γ^Q dx_J +
    /// Σ_l x^α γ^{Q−e_l}(f) df_l ∧ dx_J`.
    pub fn dbar_word(&self, w: &Word) -> Form {
        let ring = self.ring();
        if matches!(self.kind, Kind::Constant(_)) {
            return Form::zero();
        }
        let n = self.nvars();
        let mut raw: BTreeMap<(Exponent, Vec<u32>, u32), Scalar> = BTreeMap::new();
        let add = |raw: &mut BTreeMap<_, Scalar>, part: BTreeMap<(Exponent, Vec<u32>, u32), Scalar>| {
            for (k, v) in part {
                *raw.entry(k).or_insert_with(Scalar::zero) += v;
            }
        };
        for i in 0..n {
            let Some((wi, sign)) = self.wedge_dx(i, w) else {
                continue;
            };
            if w.alpha[i] > 0 {
                let mut u = wi.clone();
                u.alpha[i] -= 1;
                let c = sign.clone() * Scalar::from_integer(BigInt::from(w.alpha[i]));
                add(&mut raw, BTreeMap::from([((Exponent(u.alpha), u.q, u.forms), c)]));
            }
            for l in 0..self.nrels() {
                if w.q[l] == 0 {
                    continue;
                }
                let df = self.presentation.relations[l].derivative(i, ring);
                if df.is_zero() {
                    continue;
                }
                let mut u = wi.clone();
                u.q[l] -= 1;
                add(&mut raw, self.times_polynomial(&df, &u, &sign));
            }
        }
        self.normal_form(raw)
    }

    pub fn dbar(&self, e: &Form) -> Form {
        let mut out = Form::zero();
        for (w, c) in e.terms() {
            for (u, cu) in self.dbar_word(w).terms() {
                out.add_term(self.ring(), u.clone(), &(c * cu));
            }
        }
        out
    }

    pub fn format_word(&self, w: &Word) -> String {
        let names = &self.presentation.variables;
        let mut parts = Vec::new();
        for (i, &a) in w.alpha.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], a)),
            }
        }
        for (l, &q) in w.q.iter().enumerate() {
            if q > 0 {
                let f = self.presentation.relations[l].format(names);
                parts.push(format!("γ{q}({f})"));
            }
        }
        for (i, name) in names.iter().enumerate().take(self.nvars()) {
            if w.forms >> i & 1 == 1 {
                parts.push(format!("d{name}"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    pub fn format(&self, e: &Form) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.terms()
            .map(|(w, c)| {
                if c.is_one() {
                    self.format_word(w)
                } else {
                    format!("{c}·{}", self.format_word(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn lead_exponent(l: &LeadingPower, n: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[l.variable] = l.exponent;
    e
}

/// All `Q ∈ ℕ^r` with `|Q| = w`.
fn compositions(w: u32, r: usize) -> Vec<Vec<u32>> {
    if r == 0 {
        return if w == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=w {
        for mut rest in compositions(w - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Bit sets of `j` elements out of `n`.
fn subsets(n: usize, j: u32) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() == j).collect()
}
