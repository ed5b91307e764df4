use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{param_err, Result};
use crate::exact::binomial;

fn ratio_string<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistKind {
    Binomial,
    ShiftedBinomial,
}

/// `offset + B(trials, prob)` with an exact rational `prob`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistSpec {
    pub trials: u64,
    #[serde(serialize_with = "ratio_string")]
    pub prob: BigRational,
    pub offset: u64,
}

impl DistSpec {
    pub fn binomial(trials: u64, prob: BigRational) -> Result<Self> {
        Self::shifted(0, trials, prob)
    }

    pub fn shifted(offset: u64, trials: u64, prob: BigRational) -> Result<Self> {
        if prob < BigRational::zero() || prob > BigRational::one() {
            return param_err(format!("distribution: probability {prob} outside [0, 1]"));
        }
        Ok(Self {
            trials,
            prob,
            offset,
        })
    }

    pub fn kind(&self) -> DistKind {
        if self.offset == 0 {
            DistKind::Binomial
        } else {
            DistKind::ShiftedBinomial
        }
    }

    pub fn pmf(&self) -> Pmf {
        let n = self.trials;
        let p = &self.prob;
        let q = BigRational::one() - p;
        let mut probs = Vec::with_capacity(n as usize + 1);
        let mut p_pow = BigRational::one();
        let mut q_pows = vec![BigRational::one(); n as usize + 1];
        for i in 1..=n as usize {
            q_pows[i] = &q_pows[i - 1] * &q;
        }
        for i in 0..=n {
            let c = BigRational::from_integer(BigInt::from(binomial(n, i)));
            probs.push(c * &p_pow * &q_pows[(n - i) as usize]);
            p_pow *= p;
        }
        Pmf {
            offset: self.offset as i64,
            probs,
        }
    }
}

/// A finitely supported law on the integers `offset, offset + 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pmf {
    pub offset: i64,
    pub probs: Vec<BigRational>,
}

impl Pmf {
    pub fn point(x: i64) -> Self {
        Self {
            offset: x,
            probs: vec![BigRational::one()],
        }
    }

    pub fn bernoulli(p: BigRational) -> Self {
        Self {
            offset: 0,
            probs: vec![BigRational::one() - &p, p],
        }
    }

    /// Uniform on `lo..=hi`.
    pub fn uniform(lo: i64, hi: i64) -> Self {
        let width = (hi - lo + 1) as u64;
        Self {
            offset: lo,
            probs: vec![ratio(1, width); width as usize],
        }
    }

    pub fn lo(&self) -> i64 {
        self.offset
    }

    pub fn hi(&self) -> i64 {
        self.offset + self.probs.len() as i64 - 1
    }

    pub fn prob_at(&self, x: i64) -> BigRational {
        if x < self.lo() || x > self.hi() {
            BigRational::zero()
        } else {
            self.probs[(x - self.offset) as usize].clone()
        }
    }

    /// Values with positive probability.
    pub fn support(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(i, p)| (self.offset + i as i64, p))
    }

    pub fn total(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |acc, p| acc + p)
    }

    /// `Pr[X <= x]`.
    pub fn cdf(&self, x: i64) -> BigRational {
        if x < self.lo() {
            return BigRational::zero();
        }
        let upto = ((x - self.offset) as usize).min(self.probs.len() - 1);
        self.probs[..=upto].iter().fold(BigRational::zero(), |acc, p| acc + p)
    }

    /// `Pr[X > t]` for every `t` in `lo..=hi` of the given window.
    fn tails(&self, lo: i64, hi: i64) -> Vec<BigRational> {
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        let mut above = self.total() - self.cdf(lo - 1);
        for t in lo..=hi {
            above -= self.prob_at(t);
            out.push(above.clone());
        }
        out
    }

    /// Law of the sum of independent draws.
    pub fn convolve(&self, other: &Pmf) -> Pmf {
        let mut probs = vec![BigRational::zero(); self.probs.len() + other.probs.len() - 1];
        for (i, a) in self.probs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.probs.iter().enumerate() {
                probs[i + j] += a * b;
            }
        }
        Pmf {
            offset: self.offset + other.offset,
            probs,
        }
    }

    fn from_map(map: BTreeMap<i64, BigRational>) -> Pmf {
        let lo = *map.keys().next().expect("nonempty law");
        let hi = *map.keys().next_back().expect("nonempty law");
        let mut probs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (x, p) in map {
            probs[(x - lo) as usize] = p;
        }
        Pmf { offset: lo, probs }
    }
}

/// Exact `Pr[X <= x]`.
pub fn binomial_cdf(spec: &DistSpec, x: i64) -> BigRational {
    spec.pmf().cdf(x)
}

/// Points `t` where `Pr[X > t] > Pr[Y > t]`, over the union of supports.
pub fn dominance_violations(x: &Pmf, y: &Pmf) -> Vec<i64> {
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    let tx = x.tails(lo, hi);
    let ty = y.tails(lo, hi);
    (lo..=hi)
        .zip(tx.iter().zip(&ty))
        .filter(|(_, (a, b))| a > b)
        .map(|(t, _)| t)
        .collect()
}

/// Whether `X` is stochastically dominated by `Y`, exactly.
pub fn check_stochastic_dominance(x: &DistSpec, y: &DistSpec) -> bool {
    dominance_violations(&x.pmf(), &y.pmf()).is_empty()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaCheck {
    pub alpha: u64,
    /// `alpha <= 2d`: the support of X lies below the offset of Z.
    pub trivial: bool,
    pub dominated: bool,
    pub failing_t: Vec<i64>,
    /// `B(1, d/alpha) <=st B(ceil(n^2/alpha), 2d/n^2)`, for `alpha > 2d`.
    pub bernoulli_claim: Option<bool>,
    /// `B(alpha, d/alpha) <=st 1 + B(alpha - 1, d/alpha)`, for `alpha > 2d`.
    pub peel_claim: Option<bool>,
    /// `(alpha - 1) ceil(n^2/alpha) <= n^2`, for `alpha > 2d`.
    pub packing_claim: Option<bool>,
}

impl AlphaCheck {
    pub fn passed(&self) -> bool {
        self.dominated
            && self.bernoulli_claim != Some(false)
            && self.peel_claim != Some(false)
            && self.packing_claim != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub n: u64,
    pub d: u64,
    pub alphas: Vec<AlphaCheck>,
    pub passed: bool,
}

/// Checks `B(alpha, d/alpha) <=st 2d + B(n^2, 2d/n^2)` for every integer
/// `alpha` in `d..=n`, together with the intermediate claims of its proof.
pub fn verify_lemma_lrst(n: u64, d: u64) -> Result<LemmaReport> {
    if d < 1 || d > n {
        return param_err(format!("lemma check: need 1 <= d <= n (n = {n}, d = {d})"));
    }
    let nn = n * n;
    if 2 * d > nn {
        return param_err(format!("lemma check: 2d/n^2 exceeds 1 (n = {n}, d = {d})"));
    }
    let z = DistSpec::shifted(2 * d, nn, ratio(2 * d, nn))?.pmf();
    let mut alphas = Vec::new();
    for alpha in d..=n {
        let x = DistSpec::binomial(alpha, ratio(d, alpha))?.pmf();
        let failing_t = dominance_violations(&x, &z);
        let trivial = alpha <= 2 * d;
        let (bernoulli_claim, peel_claim, packing_claim) = if trivial {
            (None, None, None)
        } else {
            let chunk = nn.div_ceil(alpha);
            let bern = Pmf::bernoulli(ratio(d, alpha));
            let y = DistSpec::binomial(chunk, ratio(2 * d, nn))?.pmf();
            let peeled = Pmf::point(1).convolve(&DistSpec::binomial(alpha - 1, ratio(d, alpha))?.pmf());
            (
                Some(dominance_violations(&bern, &y).is_empty()),
                Some(dominance_violations(&x, &peeled).is_empty()),
                Some((alpha - 1) * chunk <= nn),
            )
        };
        alphas.push(AlphaCheck {
            alpha,
            trivial,
            dominated: failing_t.is_empty(),
            failing_t,
            bernoulli_claim,
            peel_claim,
            packing_claim,
        });
    }
    let passed = alphas.iter().all(AlphaCheck::passed);
    Ok(LemmaReport {
        n,
        d,
        alphas,
        passed,
    })
}

type Conditional = Box<dyn Fn(&[i64]) -> Pmf + Send + Sync>;

/// A dependent sequence `X_1..X_N`, given by the law of each `X_i` after any
/// history, and independent candidates `Y_1..Y_N`.
pub struct SumDominanceCase {
    pub name: String,
    pub ys: Vec<Pmf>,
    pub conditional: Conditional,
    pub expect_dominated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumCaseResult {
    pub name: String,
    /// Every conditional law of `X_i` is dominated by `Y_i`.
    pub premise_holds: bool,
    pub dominated: bool,
    /// The two sums have the same law.
    pub equal_laws: bool,
    pub expect_dominated: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumDominanceReport {
    pub cases: Vec<SumCaseResult>,
    pub passed: bool,
}

fn walk(
    case: &SumDominanceCase,
    history: &mut Vec<i64>,
    weight: &BigRational,
    sums: &mut BTreeMap<i64, BigRational>,
    premise: &mut bool,
) {
    let step = history.len();
    if step == case.ys.len() {
        let s: i64 = history.iter().sum();
        *sums.entry(s).or_insert_with(BigRational::zero) += weight;
        return;
    }
    let law = (case.conditional)(history);
    if !dominance_violations(&law, &case.ys[step]).is_empty() {
        *premise = false;
    }
    let outcomes: Vec<(i64, BigRational)> = law.support().map(|(x, p)| (x, p.clone())).collect();
    for (x, p) in outcomes {
        history.push(x);
        walk(case, history, &(weight * p), sums, premise);
        history.pop();
    }
}

/// Enumerates the dependent joint law exhaustively and compares the law of
/// its sum against the convolution of the independent candidates.
pub fn verify_sum_dominance(cases: &[SumDominanceCase]) -> SumDominanceReport {
    let results: Vec<SumCaseResult> = cases
        .iter()
        .map(|case| {
            let mut sums = BTreeMap::new();
            let mut premise = true;
            walk(case, &mut Vec::new(), &BigRational::one(), &mut sums, &mut premise);
            let x_sum = Pmf::from_map(sums);
            let y_sum = case
                .ys
                .iter()
                .skip(1)
                .fold(case.ys[0].clone(), |acc, y| acc.convolve(y));
            let dominated = dominance_violations(&x_sum, &y_sum).is_empty();
            let equal_laws = dominated && dominance_violations(&y_sum, &x_sum).is_empty();
            SumCaseResult {
                name: case.name.clone(),
                premise_holds: premise,
                dominated,
                equal_laws,
                expect_dominated: case.expect_dominated,
                passed: dominated == case.expect_dominated,
            }
        })
        .collect();
    let passed = results.iter().all(|r| r.passed);
    SumDominanceReport {
        cases: results,
        passed,
    }
}

/// Hand-built cases: two positive sequences with certified conditional
/// dominance, an independent one, and a negative control.
pub fn builtin_sum_cases() -> Vec<SumDominanceCase> {
    let half = || Pmf::bernoulli(ratio(1, 2));
    let dependent = |h: &[i64]| -> Pmf {
        match h {
            [] => Pmf::bernoulli(ratio(1, 4)),
            [x1] => Pmf::bernoulli(ratio(2 + *x1 as u64, 8)),
            _ => unreachable!("two steps"),
        }
    };
    let independent_ys = vec![
        DistSpec::binomial(3, ratio(1, 3)).expect("valid").pmf(),
        DistSpec::binomial(2, ratio(1, 2)).expect("valid").pmf(),
    ];
    let copies = independent_ys.clone();
    vec![
        SumDominanceCase {
            name: "independent-copies".into(),
            ys: independent_ys,
            conditional: Box::new(move |h| copies[h.len()].clone()),
            expect_dominated: true,
        },
        SumDominanceCase {
            name: "conditional-bernoulli".into(),
            ys: vec![half(), half()],
            conditional: Box::new(dependent),
            expect_dominated: true,
        },
        SumDominanceCase {
            name: "three-step".into(),
            ys: vec![
                Pmf::uniform(0, 2),
                DistSpec::binomial(2, ratio(3, 8)).expect("valid").pmf(),
                Pmf::bernoulli(ratio(1, 2)),
            ],
            conditional: Box::new(|h| match h {
                [] => Pmf::uniform(0, 2),
                [x1] => DistSpec::binomial(2, ratio(1 + *x1 as u64, 8)).expect("valid").pmf(),
                [x1, x2] => Pmf::bernoulli(ratio((*x1 + *x2) as u64, 8)),
                _ => unreachable!("three steps"),
            }),
            expect_dominated: true,
        },
        SumDominanceCase {
            name: "negative-control".into(),
            ys: vec![half(), Pmf::bernoulli(ratio(1, 8))],
            conditional: Box::new(dependent),
            expect_dominated: false,
        },
    ]
}
