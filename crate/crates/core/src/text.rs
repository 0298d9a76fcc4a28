//! Text syntax for Lie series, cyclic forms and tangential derivations.
//!
//! Series: `x1 + 1/2*[x1,x2] - [A,dx1]`. Forms: `<A,dA> + 1/3*<A,[A,A]>` or
//! cyclic words `(A dA)`. Whitespace is ignored; positions in errors are
//! character offsets into the input.

use crate::error::{Error, Result};
use crate::forms::{pair, CyclicForm};
use crate::freelie::{lie_coordinates, GeneratorSet, Letter, LieSeries, Poly, Word};
use crate::linalg::Rational;
use crate::tangential::TangentialDerivation;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Letter(Letter),
    Sym(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(chars[start..i].iter().collect())));
        } else if c == 'A' || c == 'x' || c == 'd' {
            if c == 'd' {
                i += 1;
                if i >= chars.len() || (chars[i] != 'A' && chars[i] != 'x') {
                    return Err(err(start, "expected `dA` or `dx<i>`"));
                }
            }
            if chars[i] == 'x' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            } else {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let l = Letter::parse(&name)
                .ok_or_else(|| err(start, format!("unknown generator `{name}`")))?;
            out.push((start, Tok::Letter(l)));
        } else if "+-*/[]<>(),".contains(c) {
            out.push((start, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(err(start, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    gens: GeneratorSet,
    trunc: usize,
}

/// A parsed summand: either a bare scalar or an envelope polynomial / form.
enum Val<T> {
    Scalar(Rational),
    Elem(T),
}

impl Parser {
    fn new(text: &str, gens: GeneratorSet, trunc: usize) -> Result<Self> {
        let toks = tokenize(text)?;
        Ok(Parser {
            toks,
            at: 0,
            end: text.chars().count(),
            gens,
            trunc,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(err(self.pos(), "unexpected trailing input")),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let pos = self.pos();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return Err(err(pos, "expected a number"));
        };
        self.at += 1;
        let mut s = n;
        if self.eat('/') {
            let dpos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(d)) => {
                    self.at += 1;
                    s = format!("{s}/{d}");
                }
                _ => return Err(err(dpos, "expected a denominator")),
            }
        }
        s.parse()
            .map_err(|_| err(pos, format!("invalid number `{s}`")))
    }

    fn letter(&mut self) -> Result<Letter> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Letter(l)) => {
                if !self.gens.contains(l) {
                    return Err(err(pos, format!("generator {l} not in {}", self.gens)));
                }
                self.at += 1;
                Ok(l)
            }
            _ => Err(err(pos, "expected a generator")),
        }
    }

    /// `sum := [+|-] term ((+|-) term)*`, `term := factor (* factor)*`.
    fn sum<T>(
        &mut self,
        atom: &mut dyn FnMut(&mut Self) -> Result<T>,
        scale: &dyn Fn(&T, &Rational) -> T,
        add: &dyn Fn(&mut T, &T),
    ) -> Result<Val<T>> {
        let mut total: Val<T> = Val::Scalar(Rational::zero());
        let mut first = true;
        loop {
            let neg = self.eat('-');
            if !neg && !self.eat('+') && !first {
                break;
            }
            first = false;
            let mut coef = Rational::one();
            let mut elem: Option<T> = None;
            loop {
                let pos = self.pos();
                if matches!(self.peek(), Some(Tok::Int(_))) {
                    coef = &coef * &self.rational()?;
                } else {
                    if elem.is_some() {
                        return Err(err(pos, "product of two non-scalar factors"));
                    }
                    elem = Some(atom(self)?);
                }
                if !self.eat('*') {
                    break;
                }
            }
            if neg {
                coef = -coef;
            }
            total = match (total, elem) {
                (Val::Scalar(a), None) => Val::Scalar(&a + &coef),
                (Val::Scalar(a), Some(e)) => {
                    if !a.is_zero() {
                        return Err(err(self.pos(), "constant term in a non-scalar sum"));
                    }
                    Val::Elem(scale(&e, &coef))
                }
                (Val::Elem(t), None) => {
                    if !coef.is_zero() {
                        return Err(err(self.pos(), "constant term in a non-scalar sum"));
                    }
                    Val::Elem(t)
                }
                (Val::Elem(mut t), Some(e)) => {
                    add(&mut t, &scale(&e, &coef));
                    Val::Elem(t)
                }
            };
        }
        Ok(total)
    }

    fn series_sum(&mut self) -> Result<Poly> {
        let n = self.trunc;
        let start = self.pos();
        let v = self.sum(
            &mut |p: &mut Self| p.series_atom(),
            &|a: &Poly, c: &Rational| a.scale(c),
            &|a: &mut Poly, b: &Poly| a.add_scaled(b, &Rational::one()),
        )?;
        match v {
            Val::Elem(p) => Ok(p.truncate(n)),
            Val::Scalar(c) if c.is_zero() => Ok(Poly::zero()),
            Val::Scalar(_) => Err(err(start, "a nonzero constant is not a Lie element")),
        }
    }

    fn series_atom(&mut self) -> Result<Poly> {
        let n = self.trunc;
        if self.eat('[') {
            let a = self.series_sum()?;
            self.expect(',')?;
            let b = self.series_sum()?;
            self.expect(']')?;
            Ok(a.bracket(&b, n))
        } else if self.eat('(') {
            let a = self.series_sum()?;
            self.expect(')')?;
            Ok(a)
        } else {
            let l = self.letter()?;
            Ok(Poly::letter(l).truncate(n))
        }
    }

    fn lie(&mut self, p: Poly, pos: usize) -> Result<LieSeries> {
        LieSeries::from_poly(self.gens, self.trunc, p)
            .map_err(|_| err(pos, "expression is not a Lie element"))
    }

    fn form_sum(&mut self) -> Result<CyclicForm> {
        let (g, n) = (self.gens, self.trunc);
        let start = self.pos();
        let v = self.sum(
            &mut |p: &mut Self| p.form_atom(),
            &|a: &CyclicForm, c: &Rational| a.scale(c),
            &|a: &mut CyclicForm, b: &CyclicForm| a.add_scaled(b, &Rational::one()),
        )?;
        match v {
            Val::Elem(f) => Ok(f),
            Val::Scalar(c) if c.is_zero() => Ok(CyclicForm::zero(g, n)),
            Val::Scalar(_) => Err(err(start, "a nonzero constant is not a form")),
        }
    }

    /// True when the tokens after an opening `(` are letters up to `)`.
    fn is_word_ahead(&self) -> bool {
        let mut i = self.at;
        let mut count = 0;
        while let Some((_, Tok::Letter(_))) = self.toks.get(i) {
            i += 1;
            count += 1;
        }
        count > 0 && matches!(self.toks.get(i), Some((_, Tok::Sym(')'))))
    }

    fn form_atom(&mut self) -> Result<CyclicForm> {
        let (g, n) = (self.gens, self.trunc);
        let pos = self.pos();
        if self.eat('<') {
            let pa = self.pos();
            let a = self.series_sum()?;
            let a = self.lie(a, pa)?;
            self.expect(',')?;
            let pb = self.pos();
            let b = self.series_sum()?;
            let b = self.lie(b, pb)?;
            self.expect('>')?;
            pair(&a, &b)
        } else if self.eat('(') {
            if self.is_word_ahead() {
                let mut ls = Vec::new();
                while !self.eat(')') {
                    ls.push(self.letter()?);
                }
                if ls.len() < 2 {
                    return Err(err(pos, "a cyclic word needs at least two letters"));
                }
                Ok(CyclicForm::word(g, n, &Word::from_letters(&ls)))
            } else {
                let f = self.form_sum()?;
                self.expect(')')?;
                Ok(f)
            }
        } else {
            Err(err(pos, "expected `<`, `(` or a number"))
        }
    }
}

/// Parses a Lie series over `gens`, truncated at `trunc` letters.
pub fn parse_series(text: &str, gens: GeneratorSet, trunc: usize) -> Result<LieSeries> {
    let mut p = Parser::new(text, gens, trunc)?;
    let start = p.pos();
    let poly = p.series_sum()?;
    p.finish()?;
    p.lie(poly, start)
}

/// Parses a cyclic form over `gens`, truncated at `trunc` letters.
pub fn parse_form(text: &str, gens: GeneratorSet, trunc: usize) -> Result<CyclicForm> {
    let mut p = Parser::new(text, gens, trunc)?;
    let f = p.form_sum()?;
    p.finish()?;
    Ok(f)
}

/// The smallest standard generator set containing every letter of the texts:
/// `Lie_n` if only `x_i` occur, forms if some `dx_i` does, gauge if `A` or `dA` does.
pub fn infer_gens<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<GeneratorSet> {
    let mut n = 1;
    let (mut forms, mut gauge) = (false, false);
    for t in texts {
        for (_, tok) in tokenize(t)? {
            if let Tok::Letter(l) = tok {
                if let Some(i) = l.index() {
                    n = n.max(i);
                }
                gauge |= l == Letter::A || l == Letter::DA;
                forms |= l.is_differential();
            }
        }
    }
    Ok(if gauge {
        GeneratorSet::gauge(n)
    } else if forms {
        GeneratorSet::forms(n)
    } else {
        GeneratorSet::lie(n)
    })
}

fn write_coef(out: &mut String, first: bool, c: &Rational) {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let mag = if neg { -c.clone() } else { c.clone() };
    if !mag.is_one() {
        let _ = write!(out, "{mag}*");
    }
}

/// Prints a Lie series in the (super) Lyndon basis.
pub fn format_series(s: &LieSeries) -> String {
    let coords = lie_coordinates(s.poly()).expect("a LieSeries has Lie coordinates");
    if coords.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (tree, c)) in coords.iter().enumerate() {
        write_coef(&mut out, i == 0, c);
        out.push_str(&tree.render());
    }
    out
}

/// Prints a cyclic form as a combination of canonical cyclic words.
pub fn format_form(f: &CyclicForm) -> String {
    f.to_string()
}

pub fn format_derivation(u: &TangentialDerivation) -> Vec<String> {
    u.components().iter().map(format_series).collect()
}

/// Parses one series text per component over `Lie_n`, `n` = number of texts.
pub fn parse_derivation(texts: &[String], trunc: usize) -> Result<TangentialDerivation> {
    let g = GeneratorSet::lie(texts.len());
    let comps = texts
        .iter()
        .map(|t| parse_series(t, g, trunc))
        .collect::<Result<Vec<_>>>()?;
    if comps.is_empty() {
        return Ok(TangentialDerivation::zero(0, trunc));
    }
    TangentialDerivation::new(comps)
}
