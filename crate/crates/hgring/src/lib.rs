//! Arithmetic for Hodge-Grothendieck polynomials: Laurent polynomials in a
//! degree variable t whose coefficients record Tate twists L^e, either with
//! plain integer multiplicities or with virtual representations of a
//! symmetric group attached.
//!
//! Conventions used throughout:
//!   - `L` is the Lefschetz class; the Tate twist Q(m) contributes `L^-m`.
//!   - Borel-Moore classes of a smooth connected d-fold top out at
//!     `t^(2d)·L^-d`; compactly-supported point counts send `t^a·L^e` to
//!     `(-1)^a · q^-e`.
//!   - Equivariant polynomials carry coefficients in the representation ring
//!     of one fixed symmetric group; mixing group sizes is an error.

use std::collections::BTreeMap;
use std::fmt;

use symrep::{kronecker, Partition, SpechtVector};

mod parse;

pub use parse::ParseError;

/// Errors from ring operations on mismatched or structurally wrong operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HGError {
    GroupMismatch {
        left: Option<usize>,
        right: Option<usize>,
    },
    PlainPolynomial,
    EquivariantPolynomial,
    AlreadyEquivariant,
}

impl fmt::Display for HGError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(g: &Option<usize>) -> String {
            match g {
                Some(n) => format!("S{n}-equivariant"),
                None => "plain".to_string(),
            }
        }
        match self {
            HGError::GroupMismatch { left, right } => {
                write!(f, "group mismatch: {} vs {}", side(left), side(right))
            }
            HGError::PlainPolynomial => {
                write!(f, "polynomial carries no group action")
            }
            HGError::EquivariantPolynomial => {
                write!(f, "polynomial carries a group action where none was expected")
            }
            HGError::AlreadyEquivariant => {
                write!(f, "polynomial already carries a group action")
            }
        }
    }
}

impl std::error::Error for HGError {}

/// Integer Laurent polynomial in L alone: the coefficient of one t-degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TateLaurent {
    coeffs: BTreeMap<i64, i64>,
}

impl TateLaurent {
    pub fn zero() -> TateLaurent {
        TateLaurent::default()
    }

    pub fn monomial(exp: i64, c: i64) -> TateLaurent {
        let mut t = TateLaurent::zero();
        t.add_assign_term(exp, c);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_assign_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &TateLaurent) -> TateLaurent {
        let mut out = self.clone();
        for (&e, &c) in &other.coeffs {
            out.add_assign_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> TateLaurent {
        let mut out = TateLaurent::zero();
        for (&e, &c) in &self.coeffs {
            out.add_assign_term(e, -c);
        }
        out
    }

    pub fn sub(&self, other: &TateLaurent) -> TateLaurent {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> TateLaurent {
        let mut out = TateLaurent::zero();
        for (&e, &c) in &self.coeffs {
            out.add_assign_term(e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &TateLaurent) -> TateLaurent {
        let mut out = TateLaurent::zero();
        for (&ea, &ca) in &self.coeffs {
            for (&eb, &cb) in &other.coeffs {
                out.add_assign_term(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Multiply by L^k.
    pub fn shift_exp(&self, k: i64) -> TateLaurent {
        let mut out = TateLaurent::zero();
        for (&e, &c) in &self.coeffs {
            out.add_assign_term(e + k, c);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Exact division in Z[L, L^-1]; None when the quotient does not exist
    /// with integer coefficients.
    pub fn try_div(&self, d: &TateLaurent) -> Option<TateLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(TateLaurent::zero());
        }
        let d_top = d.max_exp().unwrap();
        let d_top_c = d.coeffs[&d_top];
        let min_q = self.min_exp().unwrap() - d.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quo = TateLaurent::zero();
        while !rem.is_zero() {
            let r_top = rem.max_exp().unwrap();
            let r_top_c = rem.coeffs[&r_top];
            if r_top_c % d_top_c != 0 {
                return None;
            }
            let qe = r_top - d_top;
            if qe < min_q {
                return None;
            }
            let qc = r_top_c / d_top_c;
            quo.add_assign_term(qe, qc);
            rem = rem.sub(&d.scale(qc).shift_exp(qe));
        }
        Some(quo)
    }
}

/// Coefficient of one (degree, twist) slot: an integer multiplicity or a
/// virtual symmetric-group representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Int(i64),
    Rep(SpechtVector),
}

impl Coeff {
    /// Virtual dimension: the multiplicity after forgetting the action.
    pub fn dim(&self) -> i64 {
        match self {
            Coeff::Int(c) => *c,
            Coeff::Rep(r) => r.dim(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(c) => *c == 0,
            Coeff::Rep(r) => r.is_zero(),
        }
    }

    fn neg(&self) -> Coeff {
        match self {
            Coeff::Int(c) => Coeff::Int(-c),
            Coeff::Rep(r) => Coeff::Rep(r.neg()),
        }
    }

    fn add(&self, other: &Coeff) -> Result<Coeff, HGError> {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => Ok(Coeff::Int(a + b)),
            (Coeff::Rep(a), Coeff::Rep(b)) => {
                let sum = a.add(b).map_err(|_| HGError::GroupMismatch {
                    left: Some(a.group_size()),
                    right: Some(b.group_size()),
                })?;
                Ok(Coeff::Rep(sum))
            }
            (Coeff::Int(_), Coeff::Rep(r)) | (Coeff::Rep(r), Coeff::Int(_)) => {
                Err(HGError::GroupMismatch {
                    left: None,
                    right: Some(r.group_size()),
                })
            }
        }
    }

    fn mul(&self, other: &Coeff) -> Result<Coeff, HGError> {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => Ok(Coeff::Int(a * b)),
            (Coeff::Int(a), Coeff::Rep(r)) | (Coeff::Rep(r), Coeff::Int(a)) => {
                Ok(Coeff::Rep(r.scale(*a)))
            }
            (Coeff::Rep(a), Coeff::Rep(b)) => {
                let prod = kronecker(a, b).map_err(|_| HGError::GroupMismatch {
                    left: Some(a.group_size()),
                    right: Some(b.group_size()),
                })?;
                Ok(Coeff::Rep(prod))
            }
        }
    }
}

/// A Hodge-Grothendieck polynomial: finitely many classes c·t^a·L^e, with c
/// an integer or a virtual representation of one symmetric group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGPoly {
    terms: BTreeMap<(i64, i64), Coeff>,
    group: Option<usize>,
}

impl HGPoly {
    pub fn zero() -> HGPoly {
        HGPoly {
            terms: BTreeMap::new(),
            group: None,
        }
    }

    pub fn one() -> HGPoly {
        HGPoly::plain_term(0, 0, 1)
    }

    /// The single class c·t^degree·L^twist.
    pub fn plain_term(degree: i64, twist: i64, c: i64) -> HGPoly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((degree, twist), Coeff::Int(c));
        }
        HGPoly { terms, group: None }
    }

    /// The single class c·s[lambda]·t^degree·L^twist.
    pub fn equivariant_term(degree: i64, twist: i64, lambda: &Partition, c: i64) -> HGPoly {
        let mut v = SpechtVector::zero(lambda.n());
        v.add_assign_irrep(lambda, c);
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert((degree, twist), Coeff::Rep(v));
        }
        HGPoly {
            group: if terms.is_empty() {
                None
            } else {
                Some(lambda.n())
            },
            terms,
        }
    }

    fn normalized(mut terms: BTreeMap<(i64, i64), Coeff>, group: Option<usize>) -> HGPoly {
        terms.retain(|_, c| !c.is_zero());
        let group = if terms.is_empty() { None } else { group };
        HGPoly { terms, group }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The symmetric group acting on the coefficients, if any.
    pub fn group(&self) -> Option<usize> {
        self.group
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(a, _)| a).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Multiplicity at t^degree·L^twist, counting representation dimensions.
    pub fn coeff_at(&self, degree: i64, twist: i64) -> i64 {
        self.terms
            .get(&(degree, twist))
            .map(|c| c.dim())
            .unwrap_or(0)
    }

    /// The representation sitting at t^degree·L^twist.
    pub fn rep_at(&self, degree: i64, twist: i64) -> Option<&SpechtVector> {
        match self.terms.get(&(degree, twist)) {
            Some(Coeff::Rep(r)) => Some(r),
            _ => None,
        }
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (i64, i64, &Coeff)> + '_ {
        self.terms.iter().map(|(&(a, e), c)| (a, e, c))
    }

    /// (degree, twist, multiplicity) triples of a plain polynomial.
    pub fn iter_plain_terms(
        &self,
    ) -> Result<impl Iterator<Item = (i64, i64, i64)> + '_, HGError> {
        if self.group.is_some() {
            return Err(HGError::EquivariantPolynomial);
        }
        Ok(self.terms.iter().map(|(&(a, e), c)| (a, e, c.dim())))
    }

    fn group_for_add(&self, other: &HGPoly) -> Result<Option<usize>, HGError> {
        match (self.is_zero(), other.is_zero()) {
            (true, _) => Ok(other.group),
            (_, true) => Ok(self.group),
            _ if self.group == other.group => Ok(self.group),
            _ => Err(HGError::GroupMismatch {
                left: self.group,
                right: other.group,
            }),
        }
    }

    pub fn add(&self, other: &HGPoly) -> Result<HGPoly, HGError> {
        let group = self.group_for_add(other)?;
        let mut terms = self.terms.clone();
        for (&key, c) in &other.terms {
            match terms.remove(&key) {
                Some(prev) => {
                    let sum = prev.add(c)?;
                    if !sum.is_zero() {
                        terms.insert(key, sum);
                    }
                }
                None => {
                    terms.insert(key, c.clone());
                }
            }
        }
        Ok(HGPoly::normalized(terms, group))
    }

    pub fn neg(&self) -> HGPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.neg()))
            .collect();
        HGPoly {
            terms,
            group: self.group,
        }
    }

    pub fn sub(&self, other: &HGPoly) -> Result<HGPoly, HGError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &HGPoly) -> Result<HGPoly, HGError> {
        let group = match (self.group, other.group) {
            (None, g) | (g, None) => g,
            (Some(a), Some(b)) if a == b => Some(a),
            (left, right) => return Err(HGError::GroupMismatch { left, right }),
        };
        let mut terms: BTreeMap<(i64, i64), Coeff> = BTreeMap::new();
        for (&(a1, e1), c1) in &self.terms {
            for (&(a2, e2), c2) in &other.terms {
                let prod = c1.mul(c2)?;
                let key = (a1 + a2, e1 + e2);
                match terms.remove(&key) {
                    Some(prev) => {
                        let sum = prev.add(&prod)?;
                        terms.insert(key, sum);
                    }
                    None => {
                        terms.insert(key, prod);
                    }
                }
            }
        }
        Ok(HGPoly::normalized(terms, group))
    }

    /// Tensor with Q(m): multiplies every class by L^-m.
    pub fn tate_twist(&self, m: i64) -> HGPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, e), c)| ((a, e - m), c.clone()))
            .collect();
        HGPoly {
            terms,
            group: self.group,
        }
    }

    /// Raise every degree by s, leaving twists alone.
    pub fn shift(&self, s: i64) -> HGPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, e), c)| ((a + s, e), c.clone()))
            .collect();
        HGPoly {
            terms,
            group: self.group,
        }
    }

    /// Forget the group action, keeping dimensions as plain multiplicities.
    pub fn forget_equivariant(&self) -> HGPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, Coeff::Int(c.dim())))
            .collect();
        HGPoly::normalized(terms, None)
    }

    /// Tensor a plain polynomial with the trivial representation of S_n.
    pub fn promote(&self, n: usize) -> Result<HGPoly, HGError> {
        if self.group.is_some() {
            return Err(HGError::AlreadyEquivariant);
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, Coeff::Rep(SpechtVector::trivial(n).scale(c.dim()))))
            .collect();
        Ok(HGPoly::normalized(terms, Some(n)))
    }

    /// Multiplicity polynomial of one irreducible inside each coefficient.
    pub fn isotypic_part(&self, lambda: &Partition) -> Result<HGPoly, HGError> {
        if self.is_zero() {
            return Ok(HGPoly::zero());
        }
        let n = match self.group {
            Some(n) => n,
            None => return Err(HGError::PlainPolynomial),
        };
        if lambda.n() != n {
            return Err(HGError::GroupMismatch {
                left: Some(n),
                right: Some(lambda.n()),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| {
                let mult = match c {
                    Coeff::Rep(r) => r.coeff(lambda),
                    Coeff::Int(_) => 0,
                };
                (k, Coeff::Int(mult))
            })
            .collect();
        Ok(HGPoly::normalized(terms, None))
    }

    pub fn invariant_part(&self) -> Result<HGPoly, HGError> {
        if self.is_zero() {
            return Ok(HGPoly::zero());
        }
        let n = self.group.ok_or(HGError::PlainPolynomial)?;
        self.isotypic_part(&Partition::trivial(n))
    }

    pub fn sign_part(&self) -> Result<HGPoly, HGError> {
        if self.is_zero() {
            return Ok(HGPoly::zero());
        }
        let n = self.group.ok_or(HGError::PlainPolynomial)?;
        self.isotypic_part(&Partition::sign(n))
    }

    /// The full coefficient of t^degree as a Laurent polynomial in L,
    /// counting representation dimensions.
    pub fn degree_slice(&self, degree: i64) -> TateLaurent {
        let mut row = TateLaurent::zero();
        for (&(a, e), c) in &self.terms {
            if a == degree {
                row.add_assign_term(e, c.dim());
            }
        }
        row
    }

    /// Exact division of plain polynomials, eliminating top degrees first.
    /// Reports the degree where elimination stalls when no quotient exists.
    pub fn div_exact(&self, divisor: &HGPoly) -> Result<HGPoly, DivError> {
        if self.group.is_some() || divisor.group.is_some() {
            return Err(DivError::EquivariantOperand);
        }
        if divisor.is_zero() {
            return Err(DivError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(HGPoly::zero());
        }

        let d_max = divisor.max_degree().unwrap();
        let d_top = divisor.degree_slice(d_max);
        let q_min = self.min_degree().unwrap() - divisor.min_degree().unwrap();

        let mut rem: BTreeMap<i64, TateLaurent> = BTreeMap::new();
        for (&(a, e), c) in &self.terms {
            rem.entry(a).or_default().add_assign_term(e, c.dim());
        }
        rem.retain(|_, row| !row.is_zero());

        let mut quo = HGPoly::zero();
        while let Some((&r_max, r_top)) = rem.iter().next_back() {
            let stall = |rem: &BTreeMap<i64, TateLaurent>| {
                let mut remainder = HGPoly::zero();
                for (&a, row) in rem {
                    for (e, c) in row.iter() {
                        remainder = remainder
                            .add(&HGPoly::plain_term(a, e, c))
                            .expect("plain remainder");
                    }
                }
                DivError::Indivisible(IndivisibilityReport {
                    degree: r_max,
                    remainder,
                })
            };
            let q_deg = r_max - d_max;
            if q_deg < q_min {
                return Err(stall(&rem));
            }
            let q_row = match r_top.try_div(&d_top) {
                Some(q) => q,
                None => return Err(stall(&rem)),
            };
            for (e, c) in q_row.iter() {
                quo = quo
                    .add(&HGPoly::plain_term(q_deg, e, c))
                    .expect("plain quotient");
            }
            for (&(a, e), c) in &divisor.terms {
                let delta = q_row.scale(-c.dim()).shift_exp(e);
                let slot = rem.entry(a + q_deg).or_default();
                *slot = slot.add(&delta);
            }
            rem.retain(|_, row| !row.is_zero());
        }
        Ok(quo)
    }

    /// Compactly-supported point count over F_q, as a polynomial in q.
    pub fn e_count(&self, mode: CountMode) -> CountPoly {
        let mut out = CountPoly::zero();
        for (&(a, e), c) in &self.terms {
            let sign = if a.rem_euclid(2) == 0 { 1 } else { -1 };
            let exp = match mode {
                CountMode::Bm => -e,
                CountMode::CohSmooth(d) => d - e,
            };
            out.add_term(exp, sign * c.dim());
        }
        out
    }
}

/// How classes translate into powers of q when counting points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Borel-Moore classes of the space itself: t^a·L^e counts (-1)^a·q^-e.
    Bm,
    /// Cohomology of a smooth d-fold: t^a·L^w counts (-1)^a·q^(d-w).
    CohSmooth(i64),
}

/// Integer Laurent polynomial in q holding a point count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountPoly {
    terms: BTreeMap<i64, i64>,
}

impl CountPoly {
    pub fn zero() -> CountPoly {
        CountPoly::default()
    }

    pub fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn eval(&self, q: u64) -> i64 {
        let mut total = 0i64;
        for (&e, &c) in &self.terms {
            assert!(e >= 0, "negative power of q in a point count: q^{e}");
            let pow = (q as i64).pow(e as u32);
            total += c * pow;
        }
        total
    }
}

impl fmt::Display for CountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "q^{e}")?,
                (m, 1) => write!(f, "{m}·q")?,
                (m, _) => write!(f, "{m}·q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Where exact division stalled: the remainder's top degree at that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndivisibilityReport {
    pub degree: i64,
    pub remainder: HGPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivError {
    ZeroDivisor,
    EquivariantOperand,
    Indivisible(IndivisibilityReport),
}

impl fmt::Display for DivError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivError::ZeroDivisor => write!(f, "division by zero"),
            DivError::EquivariantOperand => {
                write!(f, "division requires plain operands")
            }
            DivError::Indivisible(report) => write!(
                f,
                "not divisible: stuck at degree {} with remainder {}",
                report.degree, report.remainder
            ),
        }
    }
}

impl std::error::Error for DivError {}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: i64,
    label: Option<&Partition>,
    degree: i64,
    twist: i64,
) -> fmt::Result {
    if c == 0 {
        return Ok(());
    }
    if *first {
        if c < 0 {
            write!(f, "-")?;
        }
        *first = false;
    } else if c < 0 {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mut parts: Vec<String> = Vec::new();
    let mag = c.abs();
    if mag != 1 || (label.is_none() && degree == 0 && twist == 0) {
        parts.push(mag.to_string());
    }
    if let Some(lambda) = label {
        parts.push(format!("s{lambda}"));
    }
    match degree {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{degree}")),
    }
    match twist {
        0 => {}
        1 => parts.push("L".to_string()),
        _ => parts.push(format!("L^{twist}")),
    }
    if parts.is_empty() {
        parts.push("1".to_string());
    }
    write!(f, "{}", parts.join("·"))
}

impl fmt::Display for HGPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, e), c) in &self.terms {
            match c {
                Coeff::Int(v) => write_term(f, &mut first, *v, None, a, e)?,
                Coeff::Rep(r) => {
                    for (lambda, mult) in r.iter() {
                        write_term(f, &mut first, mult, Some(lambda), a, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}
