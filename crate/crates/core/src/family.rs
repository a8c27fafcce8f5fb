//! Textual specs for the built-in graph families and a dispatcher that
//! builds them.
//!
//! Grammar: `K:t`, `C:n`, `KG:n,k`, `W:s,t`, `Omega:s,t`,
//! `M:h(SPEC)` (one cone application), `M:h^d(SPEC)` (d applications).

use crate::graph::{complete, cycle, kneser, Graph};
use crate::mycielski::{iterated_mycielskian, mycielskian};
use crate::wide::{build_omega, build_w};
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete(u32),
    Cycle(u32),
    Kneser(u32, u32),
    Wide(u32, u32),
    Chain(u32, u32),
    Mycielski {
        h: u32,
        /// `None` prints as `M:h(…)`; `Some(d)` as `M:h^d(…)`.
        iterated: Option<u32>,
        base: Box<FamilySpec>,
    },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(t) => write!(f, "K:{t}"),
            FamilySpec::Cycle(n) => write!(f, "C:{n}"),
            FamilySpec::Kneser(n, k) => write!(f, "KG:{n},{k}"),
            FamilySpec::Wide(s, t) => write!(f, "W:{s},{t}"),
            FamilySpec::Chain(s, t) => write!(f, "Omega:{s},{t}"),
            FamilySpec::Mycielski { h, iterated: None, base } => write!(f, "M:{h}({base})"),
            FamilySpec::Mycielski { h, iterated: Some(d), base } => {
                write!(f, "M:{h}^{d}({base})")
            }
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{token}'")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let digits: usize = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(self.pos, "expected a number"));
        }
        let value = self.rest()[..digits]
            .parse::<u32>()
            .map_err(|e| Error::parse(self.pos, e.to_string()))?;
        self.pos += digits;
        Ok(value)
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        if self.eat("KG:") {
            let n = self.number()?;
            self.expect(",")?;
            return Ok(FamilySpec::Kneser(n, self.number()?));
        }
        if self.eat("K:") {
            return Ok(FamilySpec::Complete(self.number()?));
        }
        if self.eat("C:") {
            return Ok(FamilySpec::Cycle(self.number()?));
        }
        if self.eat("W:") {
            let s = self.number()?;
            self.expect(",")?;
            return Ok(FamilySpec::Wide(s, self.number()?));
        }
        if self.eat("Omega:") {
            let s = self.number()?;
            self.expect(",")?;
            return Ok(FamilySpec::Chain(s, self.number()?));
        }
        if self.eat("M:") {
            let h = self.number()?;
            let iterated = if self.eat("^") { Some(self.number()?) } else { None };
            self.expect("(")?;
            let base = Box::new(self.spec()?);
            self.expect(")")?;
            return Ok(FamilySpec::Mycielski { h, iterated, base });
        }
        Err(Error::parse(self.pos, "expected a family (K:, C:, KG:, W:, Omega:, M:)"))
    }
}

pub fn parse_spec(text: &str) -> Result<FamilySpec> {
    let mut cur = Cursor { text, pos: 0 };
    let spec = cur.spec()?;
    if cur.pos != text.len() {
        return Err(Error::parse(cur.pos, "trailing input after the spec"));
    }
    Ok(spec)
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Complete(t) => complete(*t as usize),
        FamilySpec::Cycle(n) => cycle(*n as usize),
        FamilySpec::Kneser(n, k) => kneser(*n, *k),
        FamilySpec::Wide(s, t) => build_w(*s, *t),
        FamilySpec::Chain(s, t) => build_omega(*s, *t),
        FamilySpec::Mycielski { h, iterated, base } => {
            let b = build(base)?;
            match iterated {
                None => mycielskian(&b, *h),
                Some(d) => iterated_mycielskian(&b, *h, *d),
            }
        }
    }
}

/// Parse and build in one step.
pub fn build_named(text: &str) -> Result<Graph> {
    build(&parse_spec(text)?)
}
