//! Multi-sum generating functions built from declarative recipes, together
//! with the reciprocal products they are compared against.
//!
//! The recipe tables live in `data/recipes.toml`, whose header documents the
//! schema. Every term of a recipe has the shape
//!
//! ```text
//! Σ_{ranks}  q^{E} x^{L} · ∏ num Pochhammers · ∏ factors / ∏ den Pochhammers
//! ```
//!
//! with `E` a polynomial in the ranks with rational coefficients and `L` a
//! linear form. Numerator Pochhammers may carry negative powers of `q`; the
//! evaluator tracks them exactly and reports any coefficient that would be
//! left at a negative power after the whole term is assembled.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{KrError, Result};
use crate::partitions::VariantId;
use crate::qseries::{
    cadd, divide_one_minus, mul_univariate, poch_finite, product_series_inverse, ASign, Coeff,
    TruncatedSeries,
};

const BUILTIN_RECIPES: &str = include_str!("../data/recipes.toml");

/// Rank tuples enumerated per rank before the evaluator gives up on a
/// recipe whose exponent does not grow.
const RANK_CAP: i64 = 4096;

// ------------------------------------------------------------------ polynomials

#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial {
    num: i64,
    den: i64,
    powers: Vec<u32>,
}

/// A polynomial in the ranks of one recipe with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPoly {
    source: String,
    monomials: Vec<Monomial>,
    common_den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn parse_coefficient(tok: &str) -> Option<(i64, i64)> {
    match tok.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.parse::<i64>().ok()?, b.parse::<i64>().ok()?);
            (b > 0).then_some((a, b))
        }
        None => tok.parse::<i64>().ok().map(|a| (a, 1)),
    }
}

impl RankPoly {
    /// Parses text such as `"9/2 n3^2 - 1/2 n3 + n1 n2 - 1"` over the given ranks.
    pub fn parse(text: &str, ranks: &[String]) -> Result<Self> {
        let bad = |why: String| KrError::Recipe(format!("polynomial {text:?}: {why}"));
        let spaced: String = text
            .chars()
            .flat_map(|c| match c {
                '+' | '-' => vec![' ', c, ' '],
                _ => vec![c],
            })
            .collect();
        let mut monomials = Vec::new();
        let mut current: Option<Monomial> = None;
        let mut sign = 1i64;
        let mut expect_term = true;
        let fresh = |sign: i64| Monomial {
            num: sign,
            den: 1,
            powers: vec![0; ranks.len()],
        };
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if let Some(m) = current.take() {
                        monomials.push(m);
                    } else if !expect_term {
                        return Err(bad("dangling operator".into()));
                    }
                    sign = if tok == "-" { -sign } else { sign };
                    expect_term = true;
                }
                _ => {
                    let m = current.get_or_insert_with(|| fresh(sign));
                    if expect_term {
                        sign = 1;
                    }
                    expect_term = false;
                    if let Some((a, b)) = parse_coefficient(tok) {
                        m.num *= a;
                        m.den *= b;
                        continue;
                    }
                    let (name, pow) = match tok.split_once('^') {
                        Some((n, p)) => (
                            n,
                            p.parse::<u32>()
                                .map_err(|_| bad(format!("bad power in {tok:?}")))?,
                        ),
                        None => (tok, 1),
                    };
                    let idx = ranks
                        .iter()
                        .position(|r| r == name)
                        .ok_or_else(|| bad(format!("symbol {name:?} is not a rank")))?;
                    m.powers[idx] += pow;
                }
            }
        }
        match current {
            Some(m) => monomials.push(m),
            None => return Err(bad("empty or ends with an operator".into())),
        }
        for m in &mut monomials {
            let g = gcd(m.num, m.den).max(1);
            m.num /= g;
            m.den /= g;
        }
        let common_den = monomials.iter().fold(1, |l, m| l / gcd(l, m.den) * m.den);
        Ok(Self {
            source: text.to_string(),
            monomials,
            common_den,
        })
    }

    /// Value at a rank tuple; fails unless it is an integer.
    pub fn eval(&self, ranks: &[i64]) -> Result<i64> {
        let mut total: i128 = 0;
        for m in &self.monomials {
            let mut v = i128::from(m.num) * i128::from(self.common_den / m.den);
            for (&r, &p) in ranks.iter().zip(&m.powers) {
                v *= i128::from(r).pow(p);
            }
            total += v;
        }
        let d = i128::from(self.common_den);
        if total % d != 0 {
            return Err(KrError::Recipe(format!(
                "polynomial {:?} is not an integer at ranks {ranks:?}",
                self.source
            )));
        }
        i64::try_from(total / d)
            .map_err(|_| KrError::Recipe(format!("polynomial {:?} overflows", self.source)))
    }

    /// The polynomial as written in the recipe.
    pub fn source(&self) -> &str {
        &self.source
    }
}

// ------------------------------------------------------------------ raw TOML

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBook {
    #[serde(default)]
    series: Vec<RawSeries>,
    #[serde(default)]
    product: Vec<RawProduct>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    id: String,
    variant: Option<String>,
    role: Role,
    ranks: Vec<String>,
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default)]
    min: BTreeMap<String, i64>,
    #[serde(default)]
    max: BTreeMap<String, i64>,
    exponent: String,
    x: String,
    #[serde(default)]
    num: Vec<RawPoch>,
    #[serde(default)]
    den: Vec<RawPoch>,
    #[serde(default)]
    factors: Vec<Vec<RawMonomial>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoch {
    sign: Option<String>,
    base: String,
    step: i64,
    len: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomial {
    coef: i64,
    q: String,
    x: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
    id: String,
    modulus: u32,
    residues: Vec<u32>,
    sum_side: String,
}

// ------------------------------------------------------------------ compiled recipes

/// What a series recipe is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// The generating function of a family, to be compared with enumeration.
    Theorem,
    /// A second expression for a family's generating function.
    Alternative,
    /// An expression known to disagree with the family it names.
    Control,
    /// One side of a standalone series identity.
    Identity,
}

/// A Pochhammer factor `(±q^base; q^step)_len` with polynomial base and length.
#[derive(Debug, Clone)]
pub struct PochSpec {
    /// Sign of `a` in `(a; q^step)_len`.
    pub sign: ASign,
    /// Power of `q` in `a`.
    pub base: RankPoly,
    /// Power of `q` between consecutive factors.
    pub step: i64,
    /// Number of factors.
    pub len: RankPoly,
}

/// One summand shape of a recipe.
#[derive(Debug, Clone)]
pub struct Term {
    min: Vec<i64>,
    max: Vec<Option<i64>>,
    exponent: RankPoly,
    x: RankPoly,
    num: Vec<PochSpec>,
    den: Vec<PochSpec>,
    factors: Vec<Vec<(Coeff, RankPoly, usize)>>,
}

/// A multi-sum series given as data.
#[derive(Debug, Clone)]
pub struct SeriesRecipe {
    id: String,
    variant: Option<VariantId>,
    role: Role,
    ranks: Vec<String>,
    terms: Vec<Term>,
}

/// A reciprocal infinite product `1/∏_{r} (q^r; q^M)_∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRecipe {
    /// Label such as `CONJ1`.
    pub id: String,
    /// The modulus `M`.
    pub modulus: u32,
    /// Residues in `1..=M`.
    pub residues: Vec<u32>,
    /// Id of the series recipe conjectured to agree with the product at `x = 1`.
    pub sum_side: String,
}

/// All series and product recipes of one data file.
#[derive(Debug, Clone)]
pub struct RecipeBook {
    series: Vec<SeriesRecipe>,
    products: Vec<ProductRecipe>,
}

fn compile_poch(raw: &RawPoch, ranks: &[String], in_den: bool) -> Result<PochSpec> {
    let sign = match (raw.sign.as_deref(), in_den) {
        (None | Some("+"), _) => ASign::Plus,
        (Some("-"), false) => ASign::Minus,
        (Some(s), _) => {
            return Err(KrError::Recipe(format!(
                "Pochhammer sign {s:?} is not allowed here"
            )));
        }
    };
    if raw.step < 1 {
        return Err(KrError::Recipe(format!(
            "Pochhammer step {} is below 1",
            raw.step
        )));
    }
    Ok(PochSpec {
        sign,
        base: RankPoly::parse(&raw.base, ranks)?,
        step: raw.step,
        len: RankPoly::parse(&raw.len, ranks)?,
    })
}

fn compile_term(raw: &RawTerm, ranks: &[String]) -> Result<Term> {
    let index = |name: &String| {
        ranks
            .iter()
            .position(|r| r == name)
            .ok_or_else(|| KrError::Recipe(format!("bound on unknown rank {name:?}")))
    };
    let mut min = vec![0; ranks.len()];
    for (name, &v) in &raw.min {
        min[index(name)?] = v.max(0);
    }
    let mut max = vec![None; ranks.len()];
    for (name, &v) in &raw.max {
        max[index(name)?] = Some(v);
    }
    let factors = raw
        .factors
        .iter()
        .map(|f| {
            f.iter()
                .map(|m| Ok((Coeff::from(m.coef), RankPoly::parse(&m.q, ranks)?, m.x)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Term {
        min,
        max,
        exponent: RankPoly::parse(&raw.exponent, ranks)?,
        x: RankPoly::parse(&raw.x, ranks)?,
        num: raw
            .num
            .iter()
            .map(|p| compile_poch(p, ranks, false))
            .collect::<Result<_>>()?,
        den: raw
            .den
            .iter()
            .map(|p| compile_poch(p, ranks, true))
            .collect::<Result<_>>()?,
        factors,
    })
}

impl RecipeBook {
    /// Parses and validates a recipe file.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawBook =
            toml::from_str(text).map_err(|e| KrError::Recipe(format!("recipe file: {e}")))?;
        let mut series = Vec::new();
        for s in &raw.series {
            if s.terms.is_empty() {
                return Err(KrError::Recipe(format!("series {} has no terms", s.id)));
            }
            let variant = s.variant.as_deref().map(VariantId::from_str).transpose()?;
            let terms = s
                .terms
                .iter()
                .map(|t| compile_term(t, &s.ranks))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| KrError::Recipe(format!("series {}: {e}", s.id)))?;
            series.push(SeriesRecipe {
                id: s.id.clone(),
                variant,
                role: s.role,
                ranks: s.ranks.clone(),
                terms,
            });
        }
        let products: Vec<ProductRecipe> = raw
            .product
            .into_iter()
            .map(|p| ProductRecipe {
                id: p.id,
                modulus: p.modulus,
                residues: p.residues,
                sum_side: p.sum_side,
            })
            .collect();
        let mut ids: Vec<&str> = series
            .iter()
            .map(|s| s.id.as_str())
            .chain(products.iter().map(|p| p.id.as_str()))
            .collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(KrError::Recipe(format!("duplicate recipe id {}", w[0])));
        }
        for p in &products {
            if !series.iter().any(|s| s.id == p.sum_side) {
                return Err(KrError::Recipe(format!(
                    "product {} names unknown sum side {}",
                    p.id, p.sum_side
                )));
            }
        }
        Ok(Self { series, products })
    }

    /// The recipe file shipped with the crate, parsed once.
    pub fn builtin() -> &'static RecipeBook {
        static BOOK: OnceLock<RecipeBook> = OnceLock::new();
        BOOK.get_or_init(|| {
            RecipeBook::from_toml_str(BUILTIN_RECIPES).expect("bundled recipe file is valid")
        })
    }

    /// Series recipe by id.
    pub fn series(&self, id: &str) -> Result<&SeriesRecipe> {
        self.series
            .iter()
            .find(|s| s.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| KrError::Config(format!("unknown series recipe {id:?}")))
    }

    /// Product recipe by id.
    pub fn product(&self, id: &str) -> Result<&ProductRecipe> {
        self.products
            .iter()
            .find(|p| p.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| KrError::Config(format!("unknown product recipe {id:?}")))
    }

    /// The theorem recipe of a family.
    pub fn theorem_for(&self, variant: VariantId) -> Result<&SeriesRecipe> {
        self.series
            .iter()
            .find(|s| s.role == Role::Theorem && s.variant == Some(variant))
            .ok_or_else(|| KrError::Config(format!("no theorem recipe for {variant}")))
    }

    /// All series recipes in file order.
    pub fn all_series(&self) -> &[SeriesRecipe] {
        &self.series
    }

    /// All product recipes in file order.
    pub fn all_products(&self) -> &[ProductRecipe] {
        &self.products
    }
}

impl SeriesRecipe {
    /// Recipe label.
    pub fn id(&self) -> &str {
        &self.id
    }

    /// The family this series belongs to, if any.
    pub fn variant(&self) -> Option<VariantId> {
        self.variant
    }

    /// Intended use.
    pub fn role(&self) -> Role {
        self.role
    }

    /// Summation variables, outermost first.
    pub fn ranks(&self) -> &[String] {
        &self.ranks
    }

    /// Number of summands.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

// ------------------------------------------------------------------ evaluation

/// A polynomial in `q` times `q^shift`, as a dense coefficient vector.
struct Laurent {
    shift: i64,
    coeffs: Vec<Coeff>,
}

impl Laurent {
    fn monomial(exp: i64, c: Coeff) -> Self {
        Self {
            shift: exp,
            coeffs: vec![c],
        }
    }

    /// Product, keeping only exponents up to `top` when given.
    fn mul(&self, other: &Laurent, top: Option<i64>) -> Laurent {
        let shift = self.shift + other.shift;
        let exact = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match top {
            Some(t) => ((t - shift + 1).max(0) as usize).min(exact),
            None => exact,
        };
        Laurent {
            shift,
            coeffs: mul_univariate(&self.coeffs, &other.coeffs, len),
        }
    }

    fn add_into(&mut self, other: &Laurent) {
        let lo = self.shift.min(other.shift);
        let hi =
            (self.shift + self.coeffs.len() as i64).max(other.shift + other.coeffs.len() as i64);
        let mut out = vec![0; (hi - lo) as usize];
        for (src, s) in [(&self.coeffs, self.shift), (&other.coeffs, other.shift)] {
            for (i, &c) in src.iter().enumerate() {
                let k = (s - lo) as usize + i;
                out[k] = cadd(out[k], c);
            }
        }
        *self = Laurent {
            shift: lo,
            coeffs: out,
        };
    }
}

fn len_of(p: &PochSpec, ranks: &[i64], term_id: &str) -> Result<usize> {
    let n = p.len.eval(ranks)?;
    usize::try_from(n).map_err(|_| {
        KrError::Recipe(format!(
            "{term_id}: Pochhammer length {:?} is {n} at ranks {ranks:?}",
            p.len.source()
        ))
    })
}

/// Lowest power of `q` a term instance can reach, used to prune the rank loops.
fn lowest_exponent(term: &Term, ranks: &[i64], id: &str) -> Result<i64> {
    let mut low = term.exponent.eval(ranks)?;
    for p in &term.num {
        let b = p.base.eval(ranks)?;
        let n = len_of(p, ranks, id)? as i64;
        // negative factor exponents b, b+s, ... contribute their sum
        low += (0..n)
            .map(|j| b + j * p.step)
            .take_while(|&e| e < 0)
            .sum::<i64>();
    }
    for f in &term.factors {
        let mut best = i64::MAX;
        for (_, q, _) in f {
            best = best.min(q.eval(ranks)?);
        }
        if best != i64::MAX {
            low += best;
        }
    }
    Ok(low)
}

/// Adds one rank tuple's contribution to `acc`.
fn add_instance(
    recipe: &SeriesRecipe,
    term: &Term,
    ranks: &[i64],
    acc: &mut TruncatedSeries,
) -> Result<()> {
    let max_q = acc.max_q() as i64;
    let x = term.x.eval(ranks)?;
    if x < 0 {
        return Err(KrError::Recipe(format!(
            "{}: negative x power at ranks {ranks:?}",
            recipe.id
        )));
    }
    let x = x as usize;
    if x > acc.max_x() {
        return Ok(());
    }
    // expand the polynomial factors into one Laurent polynomial per extra x power
    let mut by_x: BTreeMap<usize, Laurent> = BTreeMap::new();
    by_x.insert(0, Laurent::monomial(0, 1));
    for f in &term.factors {
        let mut next: BTreeMap<usize, Laurent> = BTreeMap::new();
        for (&dx, poly) in &by_x {
            for (c, q, mx) in f {
                let prod = poly.mul(&Laurent::monomial(q.eval(ranks)?, *c), None);
                match next.get_mut(&(dx + mx)) {
                    Some(l) => l.add_into(&prod),
                    None => {
                        next.insert(dx + mx, prod);
                    }
                }
            }
        }
        by_x = next;
    }
    let e = term.exponent.eval(ranks)?;
    // negative powers still to come lower the exponents that must be kept
    let mut factors = Vec::with_capacity(term.num.len());
    let mut total_neg = 0;
    for p in &term.num {
        let n = len_of(p, ranks, &recipe.id)?;
        let b = p.base.eval(ranks)?;
        total_neg += (0..n as i64)
            .map(|j| b + j * p.step)
            .filter(|&v| v < 0)
            .sum::<i64>();
        factors.push((p, n, b));
    }
    let top = max_q - total_neg;
    for (dx, fac) in by_x {
        if x + dx > acc.max_x() {
            continue;
        }
        let mut body = Laurent::monomial(e, 1).mul(&fac, Some(top));
        for &(p, n, b) in &factors {
            let budget = (top - body.shift).max(0) as usize;
            let lf = poch_finite(p.sign, b, p.step, n, budget)?;
            let l = Laurent {
                shift: lf.q_shift,
                coeffs: lf.body.q_coeffs_at_x(0),
            };
            body = body.mul(&l, Some(top));
        }
        if body.coeffs.is_empty() {
            continue;
        }
        let low = body.shift;
        let mut coeffs = body.coeffs;
        coeffs.resize((top - low + 1).max(0) as usize, 0);
        for p in &term.den {
            let n = len_of(p, ranks, &recipe.id)?;
            let b = p.base.eval(ranks)?;
            if b < 1 {
                return Err(KrError::Recipe(format!(
                    "{}: denominator base {b} is below 1",
                    recipe.id
                )));
            }
            for j in 0..n as i64 {
                let k = (b + j * p.step) as usize;
                if k >= coeffs.len() {
                    break;
                }
                divide_one_minus(&mut coeffs, k);
            }
        }
        for (i, &c) in coeffs.iter().enumerate() {
            let exp = low + i as i64;
            if c == 0 {
                continue;
            }
            if exp < 0 {
                return Err(KrError::LaurentResolution(format!(
                    "{}: coefficient {c} at q^{exp} for ranks {} = {ranks:?}",
                    recipe.id,
                    recipe.ranks.join(", ")
                )));
            }
            if exp > max_q {
                break;
            }
            acc.add_coeff(exp as usize, x + dx, c);
        }
    }
    Ok(())
}

/// Collects every rank tuple of `term` that can reach `q^{max_q}` and `x^{max_x}`.
fn rank_tuples(
    recipe: &SeriesRecipe,
    term: &Term,
    max_q: i64,
    max_x: i64,
) -> Result<Vec<Vec<i64>>> {
    let k = recipe.ranks.len();
    let mut out = Vec::new();
    let mut current = term.min.clone();
    fn rec(
        recipe: &SeriesRecipe,
        term: &Term,
        depth: usize,
        current: &mut Vec<i64>,
        max_q: i64,
        max_x: i64,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        if depth == current.len() {
            out.push(current.clone());
            return Ok(());
        }
        let start = term.min[depth];
        let mut prev: Option<(i64, i64)> = None;
        let mut v = start;
        loop {
            if let Some(hi) = term.max[depth] {
                if v > hi {
                    break;
                }
            }
            if v - start > RANK_CAP {
                return Err(KrError::Recipe(format!(
                    "{}: rank {} exceeds {RANK_CAP} without the exponent passing q^{max_q}",
                    recipe.id, recipe.ranks[depth]
                )));
            }
            current[depth] = v;
            current[depth + 1..].copy_from_slice(&term.min[depth + 1..]);
            let low = lowest_exponent(term, current, &recipe.id)?;
            let xl = term.x.eval(current)?;
            let past_q = low > max_q && prev.is_some_and(|(pl, _)| low > pl);
            let past_x = xl > max_x && prev.is_some_and(|(_, px)| xl > px);
            if past_q || past_x {
                break;
            }
            prev = Some((low, xl));
            rec(recipe, term, depth + 1, current, max_q, max_x, out)?;
            v += 1;
        }
        current[depth] = start;
        Ok(())
    }
    if k == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    rec(recipe, term, 0, &mut current, max_q, max_x, &mut out)?;
    Ok(out)
}

/// Expands a recipe into its exact truncated bivariate series. Rank tuples
/// are spread over the rayon pool and summed exactly.
pub fn build_sum_series(
    recipe: &SeriesRecipe,
    max_q: usize,
    max_x: usize,
) -> Result<TruncatedSeries> {
    let mut jobs: Vec<(&Term, Vec<i64>)> = Vec::new();
    for term in &recipe.terms {
        for t in rank_tuples(recipe, term, max_q as i64, max_x as i64)? {
            jobs.push((term, t));
        }
    }
    jobs.par_iter()
        .try_fold(
            || TruncatedSeries::zero(max_q, max_x),
            |mut acc, (term, ranks)| {
                add_instance(recipe, term, ranks, &mut acc)?;
                Ok(acc)
            },
        )
        .try_reduce(|| TruncatedSeries::zero(max_q, max_x), |a, b| Ok(a.add(&b)))
}

/// Looks up a built-in recipe by id and expands it.
pub fn build_sum_series_by_id(id: &str, max_q: usize, max_x: usize) -> Result<TruncatedSeries> {
    build_sum_series(RecipeBook::builtin().series(id)?, max_q, max_x)
}

/// The reciprocal product of congruence side `id` (1 to 6) to order `max_q`.
pub fn build_conjecture_product(id: u8, max_q: usize) -> Result<TruncatedSeries> {
    let p = RecipeBook::builtin().product(&format!("CONJ{id}"))?;
    product_series_inverse(p.modulus, &p.residues, max_q)
}

// ------------------------------------------------------------------ comparison

/// Outcome of a coefficientwise comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVerdict {
    /// Every compared coefficient agrees.
    Equal,
    /// The first disagreement in `(n, m)` order.
    Differ {
        /// Power of `q`.
        n: usize,
        /// Power of `x`.
        m: usize,
        /// Coefficient in the first series.
        left: Coeff,
        /// Coefficient in the second series.
        right: Coeff,
    },
}

impl SeriesVerdict {
    /// Whether the comparison found no difference.
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesVerdict::Equal)
    }
}

impl fmt::Display for SeriesVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesVerdict::Equal => f.write_str("equal"),
            SeriesVerdict::Differ { n, m, left, right } => {
                write!(f, "differ at q^{n} x^{m}: {left} vs {right}")
            }
        }
    }
}

/// Compares all coefficients with `n ≤ up_to_q` and `m` up to the smaller
/// `x` order of the two series.
pub fn series_equal(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    up_to_q: usize,
) -> Result<SeriesVerdict> {
    for (name, s) in [("left", a), ("right", b)] {
        if s.max_q() < up_to_q {
            return Err(KrError::Argument(format!(
                "{name} series is known to q^{} but the comparison needs q^{up_to_q}",
                s.max_q()
            )));
        }
    }
    let max_x = a.max_x().min(b.max_x());
    for n in 0..=up_to_q {
        for m in 0..=max_x {
            let (left, right) = (a.coeff(n, m), b.coeff(n, m));
            if left != right {
                return Ok(SeriesVerdict::Differ { n, m, left, right });
            }
        }
    }
    Ok(SeriesVerdict::Equal)
}

/// [`series_equal`] after setting `x = 1` in both series.
pub fn series_equal_x1(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    up_to_q: usize,
) -> Result<SeriesVerdict> {
    series_equal(&a.specialize_x1(), &b.specialize_x1(), up_to_q)
}
