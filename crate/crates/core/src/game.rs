//! Normal-form games, their shape arithmetic and the payoff-difference
//! coordinates in which the constraint matrix is written.
//!
//! Joint strategy profiles are stored flat in lexicographic order with the
//! first player's index varying slowest. Every coordinate order downstream
//! (probability vectors, columns of the constraint matrix) follows this
//! convention.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::Rational;

/// Strategy counts `(d_1, ..., d_n)` of a game with at least two players.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameShape {
    counts: Vec<usize>,
}

/// Derived sizes of a shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    /// Number of pure joint strategies, `D = prod d_i`.
    pub joint: usize,
    /// Number of incentive constraints, `N = sum d_i (d_i - 1)`.
    pub incentive: usize,
    /// Number of independent payoff differences, `M = sum C(d_i, 2) prod_{k != i} d_k`.
    pub differences: usize,
}

impl GameShape {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidShape(format!(
                "need at least two players, got {}",
                counts.len()
            )));
        }
        if let Some(pos) = counts.iter().position(|&d| d < 1) {
            return Err(Error::InvalidShape(format!(
                "player {} has no strategies",
                pos + 1
            )));
        }
        Ok(Self { counts })
    }

    pub fn players(&self) -> usize {
        self.counts.len()
    }

    pub fn strategies(&self) -> &[usize] {
        &self.counts
    }

    pub fn dims(&self) -> Dims {
        let joint: usize = self.counts.iter().product();
        let incentive = self.counts.iter().map(|&d| d * (d - 1)).sum();
        let differences = (0..self.players())
            .map(|i| pairs(self.counts[i]) * self.context_count(i))
            .sum();
        Dims {
            joint,
            incentive,
            differences,
        }
    }

    /// Number of joint profiles of the players other than `player`.
    pub fn context_count(&self, player: usize) -> usize {
        self.counts
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != player)
            .map(|(_, &d)| d)
            .product()
    }

    /// Flat coordinate of a joint profile (0-based strategy indices).
    pub fn flat_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.counts.len());
        profile
            .iter()
            .zip(&self.counts)
            .fold(0, |acc, (&j, &d)| acc * d + j)
    }

    /// Inverse of [`GameShape::flat_index`].
    pub fn profile(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.counts.len()];
        for (slot, &d) in out.iter_mut().zip(&self.counts).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    /// Flat index of a profile with `player`'s coordinate removed.
    pub fn context_index(&self, player: usize, profile: &[usize]) -> usize {
        profile
            .iter()
            .zip(&self.counts)
            .enumerate()
            .filter(|&(k, _)| k != player)
            .fold(0, |acc, (_, (&j, &d))| acc * d + j)
    }

    /// Profile of the other players encoded by a context index.
    pub fn context_profile(&self, player: usize, mut context: usize) -> Vec<usize> {
        let mut out = vec![0; self.counts.len() - 1];
        let others: Vec<usize> = (0..self.players()).filter(|&k| k != player).collect();
        for (slot, &k) in out.iter_mut().zip(&others).rev() {
            *slot = context % self.counts[k];
            context /= self.counts[k];
        }
        out
    }

    /// Full profile obtained by inserting `strategy` for `player` into a context.
    pub fn with_strategy(&self, player: usize, context: usize, strategy: usize) -> Vec<usize> {
        let mut profile = self.context_profile(player, context);
        profile.insert(player, strategy);
        profile
    }

    fn player_offset(&self, player: usize) -> usize {
        (0..player)
            .map(|i| pairs(self.counts[i]) * self.context_count(i))
            .sum()
    }

    /// Position of `Y^(player)_context(k, l)`, `k < l`, in the difference vector.
    pub fn variable_index(&self, player: usize, context: usize, k: usize, l: usize) -> usize {
        debug_assert!(k < l && l < self.counts[player]);
        let d = self.counts[player];
        self.player_offset(player) + context * pairs(d) + pair_rank(k, l, d)
    }

    /// All difference variables in storage order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out = Vec::with_capacity(self.dims().differences);
        for player in 0..self.players() {
            let d = self.counts[player];
            for context in 0..self.context_count(player) {
                for k in 0..d {
                    for l in k + 1..d {
                        out.push(Variable {
                            player,
                            context: self.context_profile(player, context),
                            k,
                            l,
                        });
                    }
                }
            }
        }
        out
    }

    /// `Some(n)` when the shape is `(2 x n)`.
    pub fn two_by_n(&self) -> Option<usize> {
        match self.counts.as_slice() {
            [2, n] => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for GameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GameShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(['x', 'X', ','])
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidShape(format!("cannot parse `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(counts)
    }
}

/// One payoff-difference coordinate `Y^(player)_context(k, l)` with `k < l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub player: usize,
    pub context: Vec<usize>,
    pub k: usize,
    pub l: usize,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.context.iter().any(|&j| j >= 9);
        let ctx: Vec<String> = self.context.iter().map(|j| (j + 1).to_string()).collect();
        let sep = if wide { "," } else { "" };
        write!(
            f,
            "Y{}_{}({},{})",
            self.player + 1,
            ctx.join(sep),
            self.k + 1,
            self.l + 1
        )
    }
}

fn pairs(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

fn pair_rank(k: usize, l: usize, d: usize) -> usize {
    k * (2 * d - k - 1) / 2 + (l - k - 1)
}

/// A game in normal form with exact rational payoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    shape: GameShape,
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    pub fn new(shape: GameShape, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if payoffs.len() != shape.players() {
            return Err(Error::MalformedGame(format!(
                "expected {} payoff tensors, got {}",
                shape.players(),
                payoffs.len()
            )));
        }
        let joint = shape.dims().joint;
        if let Some(i) = payoffs.iter().position(|t| t.len() != joint) {
            return Err(Error::MalformedGame(format!(
                "payoff tensor of player {} has {} entries, expected {joint}",
                i + 1,
                payoffs[i].len()
            )));
        }
        Ok(Self { shape, payoffs })
    }

    /// Convenience constructor from integer payoffs.
    pub fn from_integers(shape: GameShape, payoffs: &[Vec<i64>]) -> Result<Self> {
        let payoffs = payoffs
            .iter()
            .map(|t| t.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::new(shape, payoffs)
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    /// Flat payoff tensor of `player`.
    pub fn payoffs(&self, player: usize) -> &[Rational] {
        &self.payoffs[player]
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> &Rational {
        &self.payoffs[player][self.shape.flat_index(profile)]
    }

    /// Parses the JSON game document
    /// `{"strategies": [d1, ..., dn], "payoffs": [tensor_1, ..., tensor_n]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text)?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::MalformedGame("top level must be an object".into()))?;
        let strategies = obj
            .get("strategies")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedGame("missing `strategies` array".into()))?;
        let counts = strategies
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::MalformedGame(format!("bad strategy count {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let shape = GameShape::new(counts)?;
        let tensors = obj
            .get("payoffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedGame("missing `payoffs` array".into()))?;
        if tensors.len() != shape.players() {
            return Err(Error::MalformedGame(format!(
                "expected {} payoff tensors, got {}",
                shape.players(),
                tensors.len()
            )));
        }
        let payoffs = tensors
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut flat = Vec::with_capacity(shape.dims().joint);
                flatten_tensor(t, shape.strategies(), &mut flat)
                    .map_err(|e| annotate(e, i))?;
                Ok(flat)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, payoffs)
    }

    /// Serializes to the same document format `from_json` reads.
    pub fn to_json(&self) -> Value {
        let tensors = self
            .payoffs
            .iter()
            .map(|t| nest_tensor(t, self.shape.strategies()))
            .collect();
        serde_json::json!({
            "strategies": self.shape.strategies(),
            "payoffs": Value::Array(tensors),
        })
    }

    /// Payoff differences `Y^(i)(k, l) = X^(i)(.., k, ..) - X^(i)(.., l, ..)`.
    pub fn payoff_differences(&self) -> DifferenceVector {
        let shape = &self.shape;
        let mut entries = Vec::with_capacity(shape.dims().differences);
        for player in 0..shape.players() {
            let d = shape.strategies()[player];
            let tensor = &self.payoffs[player];
            for context in 0..shape.context_count(player) {
                for k in 0..d {
                    for l in k + 1..d {
                        let hi = shape.flat_index(&shape.with_strategy(player, context, k));
                        let lo = shape.flat_index(&shape.with_strategy(player, context, l));
                        entries.push(&tensor[hi] - &tensor[lo]);
                    }
                }
            }
        }
        DifferenceVector {
            shape: shape.clone(),
            entries,
        }
    }

    /// Positive affine change of every player's payoffs, `lambda_i X^(i) + t_i`.
    pub fn transform_affine(&self, scales: &[Rational], shifts: &[Rational]) -> Result<Self> {
        let n = self.shape.players();
        if scales.len() != n || shifts.len() != n {
            return Err(Error::InvalidArgument(format!(
                "need {n} scales and {n} shifts"
            )));
        }
        if let Some(i) = scales.iter().position(|s| !s.is_positive()) {
            return Err(Error::InvalidArgument(format!(
                "scale of player {} must be positive",
                i + 1
            )));
        }
        let payoffs = self
            .payoffs
            .iter()
            .zip(scales.iter().zip(shifts))
            .map(|(t, (s, c))| t.iter().map(|x| x * s + c).collect())
            .collect();
        Self::new(self.shape.clone(), payoffs)
    }
}

fn annotate(err: Error, player: usize) -> Error {
    match err {
        Error::MalformedGame(msg) => {
            Error::MalformedGame(format!("payoffs of player {}: {msg}", player + 1))
        }
        other => other,
    }
}

fn flatten_tensor(value: &Value, dims: &[usize], out: &mut Vec<Rational>) -> Result<()> {
    let Some((&d, rest)) = dims.split_first() else {
        out.push(parse_rational_value(value)?);
        return Ok(());
    };
    let items = value
        .as_array()
        .ok_or_else(|| Error::MalformedGame(format!("expected array of length {d}")))?;
    if items.len() != d {
        return Err(Error::MalformedGame(format!(
            "expected {d} entries, found {}",
            items.len()
        )));
    }
    items.iter().try_for_each(|v| flatten_tensor(v, rest, out))
}

fn nest_tensor(flat: &[Rational], dims: &[usize]) -> Value {
    match dims.split_first() {
        None => Value::String(flat[0].to_string()),
        Some((&d, rest)) => {
            let stride = flat.len() / d;
            Value::Array(
                flat.chunks(stride)
                    .map(|chunk| nest_tensor(chunk, rest))
                    .collect(),
            )
        }
    }
}

fn parse_rational_value(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(Error::InvalidRational(format!(
                    "{n} (non-integer numbers must be given as strings)"
                )))
            }
        }
        Value::String(s) => parse_rational(s),
        other => Err(Error::InvalidRational(other.to_string())),
    }
}

/// Parses `"a/b"`, integers and finite decimals such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: BigInt = format!("{digits}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(whole, scale);
        return Ok(if negative { -value } else { value });
    }
    let int: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(int))
}

/// The vector `Y` of payoff differences for a shape, storing only `k < l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceVector {
    shape: GameShape,
    entries: Vec<Rational>,
}

impl DifferenceVector {
    pub fn new(shape: GameShape, entries: Vec<Rational>) -> Result<Self> {
        let m = shape.dims().differences;
        if entries.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "shape {shape} has {m} difference variables, got {}",
                entries.len()
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn from_integers(shape: GameShape, entries: &[i64]) -> Result<Self> {
        Self::new(
            shape,
            entries
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn zeros(shape: GameShape) -> Self {
        let m = shape.dims().differences;
        Self {
            shape,
            entries: vec![Rational::zero(); m],
        }
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    /// Stored entries in variable order.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `Y^(player)_context(k, l)` for any `k, l`; `k > l` negates the stored value.
    pub fn get(&self, player: usize, context: usize, k: usize, l: usize) -> Rational {
        use std::cmp::Ordering::*;
        match k.cmp(&l) {
            Equal => Rational::zero(),
            Less => self.entries[self.shape.variable_index(player, context, k, l)].clone(),
            Greater => -&self.entries[self.shape.variable_index(player, context, l, k)],
        }
    }

    pub fn set(&mut self, player: usize, context: usize, k: usize, l: usize, value: Rational) {
        if k < l {
            let idx = self.shape.variable_index(player, context, k, l);
            self.entries[idx] = value;
        } else if k > l {
            let idx = self.shape.variable_index(player, context, l, k);
            self.entries[idx] = -value;
        }
    }

    /// Whether `Y(k,l) + Y(l,t) = Y(k,t)` holds for every player, context and triple.
    pub fn in_space(&self) -> bool {
        let shape = &self.shape;
        (0..shape.players())
            .filter(|&i| shape.strategies()[i] >= 3)
            .all(|i| {
                let d = shape.strategies()[i];
                (0..shape.context_count(i)).all(|c| {
                    (0..d).all(|k| {
                        (k + 1..d).all(|l| {
                            (l + 1..d).all(|t| {
                                self.get(i, c, k, l) + self.get(i, c, l, t) == self.get(i, c, k, t)
                            })
                        })
                    })
                })
            })
    }

    /// A game realizing this vector, if it lies in the correlated equilibrium space.
    ///
    /// Payoffs are zero on each player's last strategy, so `X^(i)(.., k, ..) = Y^(i)(k, d_i)`.
    pub fn to_game(&self) -> Result<Game> {
        if !self.in_space() {
            return Err(Error::OutsideSpace);
        }
        let shape = &self.shape;
        let joint = shape.dims().joint;
        let payoffs = (0..shape.players())
            .map(|i| {
                let last = shape.strategies()[i] - 1;
                (0..joint)
                    .map(|flat| {
                        let profile = shape.profile(flat);
                        let context = shape.context_index(i, &profile);
                        self.get(i, context, profile[i], last)
                    })
                    .collect()
            })
            .collect();
        Game::new(shape.clone(), payoffs)
    }

    /// Signs of the stored entries.
    pub fn signs(&self) -> Vec<i8> {
        self.entries
            .iter()
            .map(|x| {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }
}
