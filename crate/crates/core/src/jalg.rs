//! Lusztig's asymptotic algebra `J` for the infinite dihedral group, the
//! homomorphism `phi: H -> J (x) A` and its inverse on the completions, and
//! the expansions of `t_y` back in `H`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::coeffring::{Direction, Laurent, TruncSeries};
use crate::completion::{
    build_f, build_ftilde, build_g, ftilde_prepared, total_sum, Completed, CompletedHecke, TBasis, Tail,
};
use crate::error::{Error, Result};
use crate::hecke::{a_function, add_into, Basis, HeckeElt};
use crate::report::Report;
use crate::scalar::Coeff;
use crate::weyl::{Gen, WeylElt};

/// A truncated element of the completion of `J`, in the `t` basis.
pub type CompletedJ<C = i64> = Completed<TBasis, C>;

/// A finite element of `J (x) A` in the `t` basis.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct JElt<C = i64> {
    coeffs: BTreeMap<WeylElt, Laurent<C>>,
}

impl<C: Coeff> JElt<C> {
    pub fn zero() -> Self {
        JElt { coeffs: BTreeMap::new() }
    }

    pub fn t(w: WeylElt) -> Self {
        Self::from_terms([(w, Laurent::one())])
    }

    /// `t_1 + t_s0 + t_s1`, the unit of `J`.
    pub fn unit() -> Self {
        Self::from_terms([WeylElt::IDENTITY, WeylElt::s0(), WeylElt::s1()].map(|w| (w, Laurent::one())))
    }

    pub fn from_terms<I: IntoIterator<Item = (WeylElt, Laurent<C>)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: WeylElt, c: &Laurent<C>) {
        add_into(&mut self.coeffs, w, c);
    }

    pub fn coeff(&self, w: &WeylElt) -> Laurent<C> {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElt, &Laurent<C>)> + '_ {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Laurent::one()))
    }

    pub fn scale(&self, a: &Laurent<C>) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(w, c)| (*w, c * a)))
    }

    /// Product `t_x t_y = sum over z of gamma_{x,y,z} t_(z^-1)`, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.coeffs {
            for (y, b) in &other.coeffs {
                let ab = a * b;
                for (z, g) in gamma_row(x, y) {
                    out.add_term(z.inverse(), &ab.scale(&C::from_int(g)));
                }
            }
        }
        out
    }

    /// View as a truncated element that is exact on every length `<= cutoff`.
    pub fn to_completed(&self, cutoff: u32, order: i64) -> CompletedJ<C> {
        let tail = if self.coeffs.keys().any(|w| w.len() > cutoff) { Tail::Unknown } else { Tail::Zero };
        let coeffs = self.coeffs.iter().map(|(w, c)| (*w, TruncSeries::exact(Direction::Ascending, c.clone())));
        Completed::from_parts(TBasis, Direction::Ascending, cutoff, order, cutoff, tail, coeffs)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.coeffs.iter().map(|(w, c)| json!({"w": w.word(), "coeff": c.to_json()})).collect();
        json!({"basis": "t", "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        if value["basis"] != "t" {
            return Err(Error::Parse(value.to_string()));
        }
        let mut out = Self::zero();
        for t in value["terms"].as_array().ok_or_else(|| Error::Parse(value.to_string()))? {
            let w: WeylElt = t["w"].as_str().ok_or_else(|| Error::Parse(t.to_string()))?.parse()?;
            out.add_term(w, &Laurent::from_json(&t["coeff"])?);
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for JElt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "t[{w}]")?;
            } else {
                write!(f, "({c}) t[{w}]")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for JElt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JElt({self})")
    }
}

/// All nonzero `gamma_{x,y,z}` for fixed `x` and `y`.
///
/// `gamma_{x,y,z}` is `(-1)^a(z)` times the coefficient of `v^-a(z)` in
/// `h_{x,y,z^-1}`, so that `t_s0^2 = t_s0`.
pub fn gamma_row(x: &WeylElt, y: &WeylElt) -> BTreeMap<WeylElt, i64> {
    let product = HeckeElt::<i64>::c(*x).mul(&HeckeElt::c(*y));
    let mut row = BTreeMap::new();
    for (zi, h) in product.terms() {
        let z = zi.inverse();
        let a = a_function(&z) as i64;
        let g = h.coeff(-a) * if a % 2 == 0 { 1 } else { -1 };
        if g != 0 {
            row.insert(z, g);
        }
    }
    row
}

/// The structure constant `gamma_{x,y,z}` of `J`.
pub fn gamma(x: &WeylElt, y: &WeylElt, z: &WeylElt) -> i64 {
    gamma_row(x, y).get(z).copied().unwrap_or(0)
}

/// `phi` on a finite element, by the closed form on each `C_w`:
/// `phi(C_1) = t_1 + t_s0 + t_s1`, `phi(C_s) = -(v + v^-1) t_s + t_(s s')` and
/// `phi(C_w) = -(v + v^-1) t_w + t_(w minus last letter) + t_(w extended)` for `l(w) >= 2`.
pub fn phi_finite<C: Coeff>(h: &HeckeElt<C>) -> JElt<C> {
    let h = h.to_basis(Basis::C);
    let mut out = JElt::zero();
    for (w, b) in h.terms() {
        out = out.add(&phi_basis_vector(w).scale(b));
    }
    out
}

fn phi_basis_vector<C: Coeff>(w: &WeylElt) -> JElt<C> {
    if w.is_identity() {
        return JElt::unit();
    }
    let mut out = JElt::from_terms([(*w, -Laurent::v_plus_vinv()), (w.extend(), Laurent::one())]);
    if w.len() >= 2 {
        out.add_term(w.drop_last(), &Laurent::one());
    }
    out
}

/// `phi` straight from its definition
/// `phi(C_x) = sum over d in {1, s0, s1} and z with a(d) = a(z) of h_{x,d,z} t_z`,
/// with every structure constant computed by multiplying in `H`.
pub fn phi_by_definition<C: Coeff>(h: &HeckeElt<C>) -> JElt<C> {
    let h = h.to_basis(Basis::C);
    let mut out = JElt::zero();
    for (x, b) in h.terms() {
        for d in [WeylElt::IDENTITY, WeylElt::s0(), WeylElt::s1()] {
            let product = HeckeElt::<C>::c(*x).mul(&HeckeElt::c(d));
            for (z, hz) in product.terms() {
                if a_function(z) == a_function(&d) {
                    out.add_term(*z, &(hz * b));
                }
            }
        }
    }
    out
}

/// `phi` on a truncated element of the `C`-basis completion, evaluated
/// termwise by the closed form. Each `t_z` only sees the coefficients at `z`
/// and its two neighbours, so one length of certification is lost unless the
/// input is known to vanish past its cutoff.
pub fn phi_completed<C: Coeff>(h: &CompletedHecke<C>) -> Result<CompletedJ<C>> {
    if h.basis() != Basis::C {
        return Err(Error::WrongBasis { expected: "C".into(), found: h.basis().tag().into() });
    }
    if h.direction() != Direction::Ascending {
        return Err(Error::DirectionMismatch);
    }
    let e = h.exact_to();
    let (out_to, tail) = match h.tail() {
        Tail::Zero => (e + 1, Tail::Zero),
        _ if e == 0 => return Err(Error::CutoffTooSmall(h.cutoff())),
        Tail::Bounded { offset, slope } => (e - 1, Tail::Bounded { offset: offset - slope.abs().max(1), slope }),
        Tail::Unknown => (e - 1, Tail::Unknown),
    };
    let b = |w: &WeylElt| -> Result<TruncSeries<C>> {
        if w.len() > e {
            Ok(TruncSeries::zero(Direction::Ascending))
        } else {
            h.coeff(w)
        }
    };
    let vv = Laurent::<C>::v_plus_vinv();
    let mut coeffs = Vec::new();
    for z in WeylElt::enumerate_by_length(0, out_to) {
        let c = if z.is_identity() {
            b(&z)?
        } else {
            b(&z)?.scale_poly(&-vv.clone()).add(&b(&z.drop_last())?)?.add(&b(&z.extend())?)?
        };
        coeffs.push((z, c));
    }
    Ok(Completed::from_parts(TBasis, Direction::Ascending, h.cutoff(), h.series_order(), out_to, tail, coeffs))
}

/// Coefficient of `C_w` in `phi^-1(t_y)` for `l(y) = n >= 1`:
/// `-q^(-(n-1)/2) sum over k <= n with w starting with y_k of q^(n-k) q^(l(w)/2)`.
fn phi_inverse_coeff<C: Coeff>(y: &WeylElt, w: &WeylElt) -> Laurent<C> {
    let n = y.len() as i64;
    let l = w.len() as i64;
    let mut acc = Laurent::zero();
    for k in 1..=n {
        if w.starts_with(&y.prefix(k as u32)) {
            acc -= &Laurent::v_pow(2 * (n - k) + l - (n - 1));
        }
    }
    acc
}

/// `phi^-1(t_y)` in the `C` basis. For `y = 1` this is the sum over all `w`
/// of `q^(l(w)/2) C_w`, from `t_1 = unit - t_s0 - t_s1`.
pub fn phi_inverse<C: Coeff>(y: &WeylElt, cutoff: u32, order: i64) -> CompletedHecke<C> {
    if y.is_identity() {
        return total_sum(cutoff, order);
    }
    let n = y.len() as i64;
    CompletedHecke::from_fn(
        Basis::C,
        Direction::Ascending,
        cutoff,
        order,
        Tail::Bounded { offset: 1 - n, slope: 1 },
        |w| phi_inverse_coeff(y, w),
    )
}

/// `(1 + q) b_{y,w}`, where `b_{y,w}` is the coefficient of `T_w` in
/// `(phi o j)^-1(t_y)`. Always a Laurent polynomial.
pub fn tw_in_t_scaled<C: Coeff>(y: &WeylElt, w: &WeylElt) -> Laurent<C> {
    let l = w.len() as i64;
    if y.is_identity() {
        // (1 + q) t_1 = (q - 1) g
        let g = Laurent::<C>::signed_v_pow(l, -2 * l);
        return &g * &(&Laurent::q_pow(1) - &Laurent::one());
    }
    let n = y.len() as i64;
    let mut acc = Laurent::zero();
    for k in 1..=n {
        let term = if w.starts_with(&y.prefix(k as u32)) {
            Laurent::signed_v_pow(l, 2 - 2 * l)
        } else if l >= k {
            Laurent::signed_v_pow(l + 1, -2 * l)
        } else {
            Laurent::signed_v_pow(k, 2 - 2 * k)
        };
        acc += term.shift(2 * (k - n));
    }
    -acc.shift(n - 1)
}

/// `(phi o j)^-1(t_y)` in the `T` basis, coefficients expanded in `q^-1`.
pub fn tw_in_t<C: Coeff>(y: &WeylElt, cutoff: u32, order: i64) -> Result<CompletedHecke<C>> {
    let one_plus_q = &Laurent::<C>::one() + &Laurent::q_pow(1);
    let mut coeffs = Vec::new();
    for w in WeylElt::enumerate_by_length(0, cutoff) {
        let b = tw_in_t_scaled::<C>(y, &w);
        coeffs.push((w, TruncSeries::expand_rational(&b, &one_plus_q, Direction::Descending, -order)?));
    }
    // Leading terms: q^-l(w) for y = 1, v^(n - 1 - 2 l(w)) otherwise.
    let offset = if y.is_identity() { 0 } else { 1 - y.len() as i64 };
    let tail = Tail::Bounded { offset, slope: 2 };
    Ok(CompletedHecke::from_parts(Basis::T, Direction::Descending, cutoff, order, cutoff, tail, coeffs))
}

/// `(phi o j)^-1(t_y)` in the `T` basis computed the long way: apply `j` to
/// `phi^-1(t_y)` and change basis from `C'` to `T`.
pub fn tw_in_t_pipeline<C: Coeff>(y: &WeylElt, cutoff: u32, order: i64) -> Result<CompletedHecke<C>> {
    phi_inverse::<C>(y, cutoff, order).j_involution().to_basis(Basis::T)
}

/// One coefficient `a_{y,x}` of `t_y` in the `C'` basis with its verdicts.
#[derive(Debug, Clone)]
pub struct CprimeEntry<C: Coeff = i64> {
    pub x: WeylElt,
    pub coeff: TruncSeries<C>,
    /// The series visibly terminates and has no positive powers of `v`.
    pub polynomial: bool,
    /// `(-1)^l(x) a_{y,x}` has no positive coefficient.
    pub sign_ok: bool,
}

/// `t_y` in the `C'` basis, obtained from the `T`-basis expansion.
#[derive(Debug, Clone)]
pub struct CprimeExpansion<C: Coeff = i64> {
    pub y: WeylElt,
    pub element: CompletedHecke<C>,
    pub entries: Vec<CprimeEntry<C>>,
    /// Agreement with `j(phi^-1(t_y))`, whose `C'` coefficients are exact.
    pub matches_closed_form: bool,
}

impl<C: Coeff> CprimeExpansion<C> {
    pub fn entries_up_to(&self, max_len: u32) -> impl Iterator<Item = &CprimeEntry<C>> + '_ {
        self.entries.iter().filter(move |e| e.x.len() <= max_len)
    }
}

/// Expand `t_y` in the `C'` basis by rewriting [`tw_in_t`] and report, for
/// every certified `x`, whether `a_{y,x}` is a polynomial in `q^(-1/2)` and
/// whether `(-1)^l(x) a_{y,x}` has nonpositive coefficients.
pub fn tw_in_cprime<C: Coeff>(y: &WeylElt, cutoff: u32, order: i64) -> Result<CprimeExpansion<C>> {
    let element = tw_in_t::<C>(y, cutoff, order)?.to_basis(Basis::Cprime)?;
    let closed = phi_inverse::<C>(y, cutoff, order).j_involution();
    let matches_closed_form = element.mismatches(&closed)?.is_empty();
    let mut entries = Vec::new();
    for x in WeylElt::enumerate_by_length(0, element.exact_to()) {
        let coeff = element.coeff(&x)?;
        let signed = coeff.known().scale(&C::from_int(if x.len() % 2 == 0 { 1 } else { -1 }));
        entries.push(CprimeEntry {
            x,
            polynomial: coeff.terminates(2) && coeff.known().is_poly_in_vinv(),
            sign_ok: signed.all_coeffs_nonpositive(),
            coeff,
        });
    }
    Ok(CprimeExpansion { y: *y, element, entries, matches_closed_form })
}

/// `phi(j(h))` for an element of the `T`- or `C'`-basis completion.
pub fn phi_of_j<C: Coeff>(h: &CompletedHecke<C>) -> Result<CompletedJ<C>> {
    let in_cprime = h.to_basis(Basis::Cprime)?;
    phi_completed(&in_cprime.j_involution())
}

/// `(1 + q) / (1 - q) = 1 + 2q + 2q^2 + ...`, expanded in `v` up to `v^order`.
pub fn images_prefactor<C: Coeff>(order: i64) -> Result<TruncSeries<C>> {
    let one = Laurent::<C>::one();
    let q = Laurent::<C>::q_pow(1);
    TruncSeries::expand_rational(&(&one + &q), &(&one - &q), Direction::Ascending, order)
}

/// `(v + v^-1) t_s0s1 - (q + 1) t_s0`.
pub fn ftilde_image<C: Coeff>() -> JElt<C> {
    JElt::from_terms([
        (WeylElt::dominant_translation(1), Laurent::v_plus_vinv()),
        (WeylElt::s0(), -(&Laurent::q_pow(1) + &Laurent::one())),
    ])
}

fn compare_j<C: Coeff>(name: &str, got: &CompletedJ<C>, expect: &CompletedJ<C>, min_depth: i64, report: &mut Report) -> Result<()> {
    let bad = got.mismatches(expect)?;
    let depth = got.guaranteed_depth();
    let deep_enough = depth.is_none_or(|d| d >= min_depth);
    let detail = if bad.is_empty() {
        match depth {
            Some(d) => format!("agrees on lengths <= {}, every coefficient known through depth {d}", got.exact_to()),
            None => format!("agrees exactly on lengths <= {}", got.exact_to()),
        }
    } else {
        let shown: Vec<String> = bad.iter().take(6).map(|w| format!("{w}: {}", got.coeff(w).unwrap())).collect();
        format!("{} mismatches, e.g. {}", bad.len(), shown.join("; "))
    };
    report.push(name, bad.is_empty() && deep_enough, detail);
    Ok(())
}

/// Images of `g` and `f~` under `phi o j`, computed by rewriting in `C'`,
/// applying `j` and then `phi`.
///
/// `f~` is built from its `T`-basis formula; the check is repeated on the
/// `C'`-basis element `-q^-n (1+q) C'_(s0s1)^n + q^-n (v + v^-1) C'_s0(s1s0)^n`,
/// and the two are compared directly.
pub fn verify_images<C: Coeff>(cutoff: u32, order: i64) -> Result<Report> {
    let mut report = Report::new();
    let min_depth = 4;

    let g_img = phi_of_j(&build_g::<C>(cutoff, order))?;
    let u = images_prefactor::<C>(order)?;
    let g_expect = Completed::from_parts(
        TBasis,
        Direction::Ascending,
        cutoff,
        order,
        g_img.exact_to(),
        Tail::Zero,
        [(WeylElt::IDENTITY, u)],
    );
    compare_j("phi(j(g)) = (1+2q/(1-q)) t_1", &g_img, &g_expect, min_depth, &mut report)?;

    let expect = ftilde_image::<C>();
    let ft = build_ftilde::<C>(cutoff, order);
    let ft_img = phi_of_j(&ft)?;
    let ft_expect = expect.to_completed(ft_img.exact_to(), order);
    compare_j("phi(j(f~)) = (v+v^-1) t_s0s1 - (q+1) t_s0", &ft_img, &ft_expect, min_depth, &mut report)?;

    let prepared = ftilde_prepared::<C>(cutoff, order);
    let prep_img = phi_of_j(&prepared)?;
    compare_j(
        "phi(j(prepared f~)) = (v+v^-1) t_s0s1 - (q+1) t_s0",
        &prep_img,
        &expect.to_completed(prep_img.exact_to(), order),
        min_depth,
        &mut report,
    )?;

    let rewritten = ft.rewrite_in_cprime()?;
    let bad = rewritten.mismatches(&prepared)?;
    let shown: Vec<String> = bad.iter().take(4).map(|w| format!("{w}: {}", rewritten.coeff(w).unwrap())).collect();
    report.push(
        "f~ rewritten in C' equals the prepared form",
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { format!("{} mismatches, e.g. {}", bad.len(), shown.join("; ")) },
    );

    // phi(j(f)) = phi(j(f~)) + phi(j(T_1 + T_s0))
    let f_img = phi_of_j(&build_f::<C>(cutoff, order))?;
    let head = HeckeElt::<C>::from_terms(Basis::T, [(WeylElt::IDENTITY, Laurent::one()), (WeylElt::s0(), Laurent::one())]);
    let head_img = phi_finite(&head.j_involution()).to_completed(ft_img.exact_to(), order);
    let assembled = ft_img.add(&head_img)?;
    compare_j("phi(j(f)) = phi(j(f~)) + phi(j(T_1 + T_s0))", &f_img, &assembled, min_depth, &mut report)?;
    Ok(report)
}

/// Checks on the structure constants of `J` over lengths `<= max_len`:
/// `(-v)^a(z) h_{x,y,z^-1} - gamma_{x,y,z}` has only positive powers of `v`,
/// the only nonzero `gamma_{s,s,z}` are `gamma_{s,s,s} = 1`, `t_s` is
/// idempotent, `t_1 + t_s0 + t_s1` is a two-sided unit, and `J` is
/// associative on basis triples of length `<= min(max_len, 3)`.
pub fn verify_gamma(max_len: u32) -> Report {
    let mut report = Report::new();
    let elts = WeylElt::enumerate_by_length(0, max_len);

    let mut bad = Vec::new();
    for x in &elts {
        for y in &elts {
            let product = HeckeElt::<i64>::c(*x).mul(&HeckeElt::c(*y));
            for (zi, h) in product.terms() {
                let z = zi.inverse();
                let a = a_function(&z) as i64;
                let sign = if a % 2 == 0 { 1 } else { -1 };
                let rest = &h.shift(a).scale(&sign) - &Laurent::constant(gamma(x, y, &z));
                if rest.min_exp().is_some_and(|e| e <= 0) {
                    bad.push(format!("({x},{y},{z})"));
                }
            }
        }
    }
    report.push(
        "gamma congruence",
        bad.is_empty(),
        if bad.is_empty() { format!("all pairs of length <= {max_len}") } else { bad.join(" ") },
    );

    let mut bad = Vec::new();
    for s in [Gen::S0.elt(), Gen::S1.elt()] {
        let row = gamma_row(&s, &s);
        if row != BTreeMap::from([(s, 1)]) {
            bad.push(format!("gamma_({s},{s},.) = {row:?}"));
        }
        let t = JElt::<i64>::t(s);
        if t.mul(&t) != t {
            bad.push(format!("t_{s}^2 != t_{s}"));
        }
    }
    report.push("gamma_{s,s,s} = 1 and t_s idempotent", bad.is_empty(), bad.join("; "));

    let unit = JElt::<i64>::unit();
    let bad: Vec<String> = elts
        .iter()
        .filter(|w| {
            let t = JElt::t(**w);
            unit.mul(&t) != t || t.mul(&unit) != t
        })
        .map(|w| w.to_string())
        .collect();
    report.push("t_1 + t_s0 + t_s1 is a unit", bad.is_empty(), bad.join(" "));

    let small = WeylElt::enumerate_by_length(0, max_len.min(3));
    let mut bad = Vec::new();
    for x in &small {
        for y in &small {
            let xy = JElt::<i64>::t(*x).mul(&JElt::t(*y));
            for z in &small {
                let left = xy.mul(&JElt::t(*z));
                let right = JElt::t(*x).mul(&JElt::t(*y).mul(&JElt::t(*z)));
                if left != right {
                    bad.push(format!("({x},{y},{z})"));
                }
            }
        }
    }
    report.push("associativity", bad.is_empty(), bad.join(" "));
    report
}

/// All nonzero `gamma_{x,y,z}` with `l(x), l(y) <= max_len`.
pub fn gamma_table(max_len: u32) -> Vec<(WeylElt, WeylElt, WeylElt, i64)> {
    let elts = WeylElt::enumerate_by_length(0, max_len);
    let mut out = Vec::new();
    for x in &elts {
        for y in &elts {
            for (z, g) in gamma_row(x, y) {
                out.push((*x, *y, z, g));
            }
        }
    }
    out
}

/// `phi(phi^-1(t_y)) = t_y` on every certified length for `l(y) <= max_y`,
/// and the unnormalized cone sum for `t_s0s1s0s1` mapping to `-q^(3/2) t_s0s1s0s1`.
pub fn verify_phi_inverse<C: Coeff>(max_y: u32, cutoff: u32, order: i64) -> Result<Report> {
    let mut report = Report::new();
    let mut bad = Vec::new();
    let mut certified = u32::MAX;
    for y in WeylElt::enumerate_by_length(0, max_y) {
        let img = phi_completed(&phi_inverse::<C>(&y, cutoff, order))?;
        certified = certified.min(img.exact_to());
        let expect = JElt::<C>::t(y).to_completed(img.exact_to(), order);
        let wrong = img.mismatches(&expect)?;
        if !wrong.is_empty() {
            bad.push(format!("t_{y} at {}", wrong[0]));
        }
    }
    let detail = if bad.is_empty() {
        format!("l(y) <= {max_y}, exact on lengths <= {certified}")
    } else {
        bad.join(" ")
    };
    report.push("phi(phi^-1(t_y)) = t_y", bad.is_empty(), detail);

    // Before normalization: sum over k of q^(4-k) times the cone over y_k.
    let y = WeylElt::parse("0101")?;
    let mut raw: Option<CompletedHecke<C>> = None;
    for k in 1..=4 {
        let cone = crate::completion::cone_sum::<C>(&y.prefix(k), cutoff, order)?.scale(&Laurent::q_pow(4 - k as i64));
        raw = Some(match raw {
            None => cone,
            Some(acc) => acc.add(&cone)?,
        });
    }
    let img = phi_completed(&raw.expect("four cones"))?;
    let expect = JElt::<C>::from_terms([(y, -Laurent::v_pow(3))]).to_completed(img.exact_to(), order);
    let wrong = img.mismatches(&expect)?;
    report.push(
        "worked example: cones over 0101 map to -q^(3/2) t_0101",
        wrong.is_empty(),
        if wrong.is_empty() { format!("exact on lengths <= {}", img.exact_to()) } else { format!("mismatch at {}", wrong[0]) },
    );
    Ok(report)
}

/// For `l(y) <= max_y` and certified `l(x) <= max_x`: `a_{y,x}` is a
/// polynomial in `v^-1`, `(-1)^l(x) a_{y,x}` has nonpositive coefficients,
/// and `(q + 1) b_{y,x}` is a polynomial in `v^-1`. Coefficients the cutoff
/// or series order cannot settle count as failures.
pub fn verify_expansion_signs<C: Coeff>(max_y: u32, max_x: u32, cutoff: u32, order: i64) -> Result<Report> {
    let mut report = Report::new();
    let one_plus_q = &Laurent::<C>::one() + &Laurent::q_pow(1);
    for y in WeylElt::enumerate_by_length(0, max_y) {
        let expansion = tw_in_cprime::<C>(&y, cutoff, order)?;
        let mut bad: Vec<String> = Vec::new();
        if !expansion.matches_closed_form {
            bad.push("disagrees with j(phi^-1(t_y))".into());
        }
        let reach = expansion.element.exact_to().min(max_x);
        if reach < max_x {
            bad.push(format!("certified only to l(x) <= {reach}"));
        }
        for e in expansion.entries_up_to(max_x) {
            if !e.coeff.terminates(2) {
                bad.push(format!("a_{{{y},{}}} undetermined at order {order}", e.x));
            } else if !e.polynomial {
                bad.push(format!("a_{{{y},{}}} not a polynomial in v^-1", e.x));
            } else if !e.sign_ok {
                bad.push(format!("a_{{{y},{}}} has a sign error", e.x));
            }
        }
        let t = tw_in_t::<C>(&y, cutoff, order)?;
        for x in WeylElt::enumerate_by_length(0, max_x.min(t.exact_to())) {
            let scaled = t.coeff(&x)?.scale_poly(&one_plus_q);
            if !scaled.terminates(2) {
                bad.push(format!("(q+1) b_{{{y},{x}}} undetermined at order {order}"));
            } else if !scaled.known().is_poly_in_vinv() {
                bad.push(format!("(q+1) b_{{{y},{x}}} = {} is not a polynomial in v^-1", scaled.known()));
            }
        }
        let detail = if bad.is_empty() { format!("l(x) <= {max_x}") } else { bad.join("; ") };
        report.push(format!("t_{y}"), bad.is_empty(), detail);
    }
    Ok(report)
}

/// The three distinguished involutions.
pub fn distinguished() -> [WeylElt; 3] {
    [WeylElt::IDENTITY, Gen::S0.elt(), Gen::S1.elt()]
}
