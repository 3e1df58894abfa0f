use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::arith::{factorize, Factorization};
use crate::error::Result;
use crate::rational::ExactRational;

type Rule = dyn Fn(u64, u32) -> ExactRational + Send + Sync;

/// A multiplicative function given by its values on prime powers.
///
/// The rule is consulted only for exponents `>= 1`; the value at 1 is 1.
type Memo = Arc<RwLock<HashMap<(u64, u32), ExactRational>>>;

/// Cloning is cheap and clones share the memo table.
#[derive(Clone)]
pub struct MultiplicativeFunction {
    name: Arc<str>,
    rule: Arc<Rule>,
    memo: Option<Memo>,
}

impl fmt::Debug for MultiplicativeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFunction")
            .field("name", &self.name)
            .field("memoized", &self.memo.is_some())
            .finish()
    }
}

impl MultiplicativeFunction {
    pub fn new<F>(name: impl Into<Arc<str>>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> ExactRational + Send + Sync + 'static,
    {
        MultiplicativeFunction {
            name: name.into(),
            rule: Arc::new(rule),
            memo: None,
        }
    }

    /// Same rule, with values cached per `(p, α)`.
    pub fn memoized(mut self) -> Self {
        self.memo = Some(Arc::new(RwLock::new(HashMap::new())));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<Arc<str>>) -> Self {
        MultiplicativeFunction {
            name: name.into(),
            ..self.clone()
        }
    }

    /// `f(p^alpha)`; `alpha = 0` gives 1.
    pub fn at_prime_power(&self, p: u64, alpha: u32) -> ExactRational {
        if alpha == 0 {
            return ExactRational::one();
        }
        let Some(memo) = &self.memo else {
            return (self.rule)(p, alpha);
        };
        if let Some(v) = memo.read().expect("memo poisoned").get(&(p, alpha)) {
            return v.clone();
        }
        let v = (self.rule)(p, alpha);
        memo.write()
            .expect("memo poisoned")
            .insert((p, alpha), v.clone());
        v
    }

    pub fn eval_factored(&self, n: &Factorization) -> ExactRational {
        let mut acc = ExactRational::one();
        for &(p, e) in n.factors() {
            let v = self.at_prime_power(p, e);
            if v.is_zero() {
                return v;
            }
            acc *= &v;
        }
        acc
    }

    pub fn eval(&self, n: u64) -> Result<ExactRational> {
        Ok(self.eval_factored(&factorize(n)?))
    }

    /// Dirichlet convolution `self * other`, memoized.
    pub fn convolve(&self, other: &MultiplicativeFunction) -> MultiplicativeFunction {
        let (f, g) = (self.clone(), other.clone());
        let name = format!("({}*{})", self.name, other.name);
        MultiplicativeFunction::new(name, move |p, alpha| {
            (0..=alpha)
                .map(|b| f.at_prime_power(p, b) * g.at_prime_power(p, alpha - b))
                .sum()
        })
        .memoized()
    }

    /// Pointwise product.
    pub fn times(&self, other: &MultiplicativeFunction) -> MultiplicativeFunction {
        let (f, g) = (self.clone(), other.clone());
        let name = format!("({}.{})", self.name, other.name);
        MultiplicativeFunction::new(name, move |p, a| f.at_prime_power(p, a) * g.at_prime_power(p, a))
    }

    /// Pointwise quotient; `other` must not vanish on prime powers.
    pub fn over(&self, other: &MultiplicativeFunction) -> MultiplicativeFunction {
        let (f, g) = (self.clone(), other.clone());
        let name = format!("({}/{})", self.name, other.name);
        MultiplicativeFunction::new(name, move |p, a| f.at_prime_power(p, a) / g.at_prime_power(p, a))
    }

    /// `n ↦ n^power · f(n)`.
    pub fn scaled_by_power(&self, power: u32, name: impl Into<Arc<str>>) -> MultiplicativeFunction {
        let f = self.clone();
        MultiplicativeFunction::new(name, move |p, a| {
            ExactRational::from(p).pow(power * a) * f.at_prime_power(p, a)
        })
    }
}
