use crate::error::{Error, Result};
use crate::expr::parse_scalar;
use crate::fieldsolve::DEFAULT_WITNESS_BOUND;
use crate::gf2k::{parse_gf2_poly, Fq};
use crate::poly::DEFAULT_DIVISOR_BUDGET;
use crate::quadroots::SolveOptions;
use crate::quat::QuatAlgebra;

/// Settings read from a flat `key = value` file; `#` starts a comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Degree of the constant field; taken from `fq_modulus` when unset.
    pub k: Option<u32>,
    pub fq_modulus: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub witness_bound: u32,
    pub oracle_bound: u32,
    pub divisor_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            k: None,
            fq_modulus: None,
            alpha: None,
            beta: None,
            witness_bound: DEFAULT_WITNESS_BOUND,
            oracle_bound: 1,
            divisor_budget: DEFAULT_DIVISOR_BUDGET,
        }
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("line {line}: `{key}` needs a non-negative integer, got `{value}`")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        let mut seen = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            let (key, value) = s
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {line}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.contains(&key) {
                return Err(Error::Config(format!("line {line}: `{key}` given twice")));
            }
            seen.push(key);
            match key {
                "k" => cfg.k = Some(number(key, value, line)?),
                "fq_modulus" => cfg.fq_modulus = Some(value.to_string()),
                "alpha" => cfg.alpha = Some(value.to_string()),
                "beta" => cfg.beta = Some(value.to_string()),
                "witness_bound" => cfg.witness_bound = number(key, value, line)?,
                "oracle_bound" => cfg.oracle_bound = number(key, value, line)?,
                "divisor_budget" => cfg.divisor_budget = number(key, value, line)?,
                other => return Err(Error::Config(format!("line {line}: unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
        Self::parse(&text)
    }

    pub fn field(&self) -> Result<Fq> {
        let field = match &self.fq_modulus {
            Some(m) => {
                let bits = parse_gf2_poly(m)?;
                let bits = u16::try_from(bits).map_err(|_| Error::InvalidModulus(m.clone()))?;
                Fq::new(bits)?
            }
            None => Fq::with_degree(self.k.unwrap_or(1))?,
        };
        match self.k {
            Some(k) if k != field.degree() => Err(Error::Config(format!(
                "k = {k} but fq_modulus has degree {}",
                field.degree()
            ))),
            _ => Ok(field),
        }
    }

    /// Builds the algebra and runs its division preflight.
    pub fn algebra(&self) -> Result<QuatAlgebra> {
        let field = self.field()?;
        let (mut alpha, mut beta) = QuatAlgebra::standard_parameters(field);
        let scalar = |key: &str, text: &str| {
            parse_scalar(field, text).map_err(|e| Error::Config(format!("{key}: {e}")))
        };
        if let Some(a) = &self.alpha {
            alpha = scalar("alpha", a)?;
        }
        if let Some(b) = &self.beta {
            beta = scalar("beta", b)?;
        }
        QuatAlgebra::new(alpha, beta, self.witness_bound)
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions { witness_bound: self.witness_bound, divisor_budget: self.divisor_budget }
    }
}
