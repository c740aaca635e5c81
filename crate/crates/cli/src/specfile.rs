//! Line-oriented manifold spec files.
//!
//! ```text
//! manifold example3d
//! coords x y z
//! param a1 b1
//! assume y != 0
//! frame-mode bracket
//! bracket [E1,E2] = 1/y E2
//! act E1 : y -> 1
//! metric identity
//! contact xi = E3
//! contact phi : E1 -> -E2
//! declare k = -1/y
//! ```

use cmgeom::{ContactDecl, FrameMode, FrameSpec};
use symcore::parse::{split_juxtaposed, tokenize, TokenKind};
use symcore::{parse_expr, Exclusion, RatFn, Symbol, SymbolTable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Missing(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub name: String,
    pub coords: Vec<Symbol>,
    pub params: Vec<Symbol>,
    pub exclusions: Vec<Exclusion>,
    pub mode: FrameMode,
    pub metric: Vec<Vec<RatFn>>,
    /// `None` when the file has no `contact` lines.
    pub contact: Option<ContactDecl>,
    pub declare_k: Option<RatFn>,
    pub declare_mu: Option<RatFn>,
}

impl SpecFile {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn frame_spec(&self) -> FrameSpec {
        FrameSpec {
            coords: self.coords.clone(),
            params: self.params.clone(),
            exclusions: self.exclusions.clone(),
            mode: self.mode.clone(),
            metric: self.metric.clone(),
        }
    }

    pub fn table(&self) -> SymbolTable {
        table(&self.coords, &self.params)
    }
}

fn table(coords: &[Symbol], params: &[Symbol]) -> SymbolTable {
    SymbolTable::new(coords.iter().map(|s| s.name()), params.iter().map(|s| s.name()))
}

/// One significant line with its position.
struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Byte offset of `text` within the raw line.
    offset: usize,
}

impl<'a> Line<'a> {
    fn syntax(&self, at: usize, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            line: self.no,
            column: self.offset + at + 1,
            message: message.into(),
        }
    }

    fn semantic(&self, message: impl Into<String>) -> SpecError {
        SpecError::Semantic {
            line: self.no,
            message: message.into(),
        }
    }

    /// Sub-slice of `text` with its own offset.
    fn slice(&self, start: usize, end: usize) -> Line<'a> {
        let raw = &self.text[start..end];
        let lead = raw.len() - raw.trim_start().len();
        Line {
            no: self.no,
            text: raw.trim(),
            offset: self.offset + start + lead,
        }
    }

    fn after(&self, start: usize) -> Line<'a> {
        self.slice(start, self.text.len())
    }

    /// Splits at the first occurrence of `sep`.
    fn split_once(&self, sep: &str) -> Option<(Line<'a>, Line<'a>)> {
        let at = self.text.find(sep)?;
        Some((self.slice(0, at), self.after(at + sep.len())))
    }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            (!trimmed.is_empty()).then(|| Line {
                no: i + 1,
                text: trimmed,
                offset: body.len() - body.trim_start().len(),
            })
        })
        .collect()
}

struct Parser {
    coords: Vec<Symbol>,
    params: Vec<Symbol>,
    table: SymbolTable,
}

impl Parser {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn expr(&self, line: &Line<'_>) -> Result<RatFn, SpecError> {
        if line.text.is_empty() {
            return Err(line.syntax(0, "expected an expression"));
        }
        parse_expr(line.text, &self.table)
            .and_then(|e| e.to_ratfn())
            .map_err(|e| match e {
                symcore::Error::Syntax { pos, msg } => line.syntax(pos, msg),
                symcore::Error::UnknownSymbol { name, pos } => {
                    line.syntax(pos.unwrap_or(0), format!("unknown symbol `{name}`"))
                }
                other => line.syntax(0, other.to_string()),
            })
    }

    /// `E<i>` with `1 <= i <= dim`, zero-based.
    fn frame_index(&self, line: &Line<'_>, name: &str, at: usize) -> Result<usize, SpecError> {
        let i: usize = name
            .strip_prefix('E')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| line.syntax(at, format!("expected a frame vector E<i>, found `{name}`")))?;
        if i == 0 || i > self.dim() {
            return Err(line.semantic(format!("E{i} is out of range for dimension {}", self.dim())));
        }
        Ok(i - 1)
    }

    fn coord_index(&self, line: &Line<'_>, name: &str) -> Result<usize, SpecError> {
        self.coords
            .iter()
            .position(|c| c.name() == name)
            .ok_or_else(|| line.semantic(format!("`{name}` is not a coordinate")))
    }

    /// `<expr> B [+ <expr> B ...]` over the basis names accepted by `basis`.
    /// A bare `0` is the zero vector.
    fn combination(
        &self,
        line: &Line<'_>,
        basis: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<Vec<RatFn>, SpecError> {
        let mut out = vec![RatFn::zero(); self.dim()];
        let tokens = tokenize(line.text);
        let mut depth = 0;
        let mut term_start = 0;
        let mut expect_sep = false;
        let mut seen = false;
        for (n, tok) in tokens.iter().enumerate() {
            if expect_sep {
                if !matches!(tok.kind, TokenKind::Plus | TokenKind::Minus) {
                    return Err(line.syntax(tok.start, "expected `+` or `-` between terms"));
                }
                expect_sep = false;
                term_start = tok.start;
                continue;
            }
            match &tok.kind {
                TokenKind::LParen => depth += 1,
                TokenKind::RParen => depth -= 1,
                TokenKind::Ident(name) if depth == 0 => {
                    let Some(k) = basis(name) else { continue };
                    let prev = n.checked_sub(1).map(|p| &tokens[p].kind);
                    let mut coeff_end = tok.start;
                    if matches!(prev, Some(TokenKind::Star)) {
                        coeff_end = tokens[n - 1].start;
                    }
                    let coeff = line.slice(term_start, coeff_end);
                    let c = match coeff.text {
                        "" | "+" => RatFn::one(),
                        "-" => -RatFn::one(),
                        t => {
                            let body = if let Some(rest) = t.strip_prefix('+') {
                                coeff.after(t.len() - rest.len())
                            } else {
                                coeff
                            };
                            self.expr(&body)?
                        }
                    };
                    out[k] = &out[k] + &c;
                    expect_sep = true;
                    seen = true;
                }
                _ => {}
            }
        }
        if !expect_sep {
            let rest = line.after(term_start);
            if seen || rest.text.is_empty() {
                return Err(line.syntax(term_start, "term without a basis vector"));
            }
            if !self.expr(&rest)?.is_zero() {
                return Err(line.syntax(term_start, "term without a basis vector"));
            }
        }
        Ok(out)
    }

    fn frame_combination(&self, line: &Line<'_>) -> Result<Vec<RatFn>, SpecError> {
        let dim = self.dim();
        self.combination(line, &|name: &str| {
            name.strip_prefix('E')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= dim)
                .map(|i| i - 1)
        })
    }

    fn coord_combination(&self, line: &Line<'_>) -> Result<Vec<RatFn>, SpecError> {
        self.combination(line, &|name: &str| {
            name.strip_prefix('d')
                .and_then(|c| self.coords.iter().position(|s| s.name() == c))
        })
    }

    /// Leading `E<i>` token of a line.
    fn leading_frame(&self, line: &Line<'_>) -> Result<usize, SpecError> {
        let name = line.text.split_whitespace().next().unwrap_or("");
        self.frame_index(line, name, 0)
    }
}

fn identifiers(line: &Line<'_>) -> Result<Vec<Symbol>, SpecError> {
    let mut out: Vec<Symbol> = Vec::new();
    for tok in tokenize(line.text) {
        match tok.kind {
            TokenKind::Ident(name) => {
                if out.iter().any(|s| s.name() == name) {
                    return Err(line.semantic(format!("`{name}` is declared twice")));
                }
                out.push(Symbol::new(&name));
            }
            _ => return Err(line.syntax(tok.start, "expected an identifier")),
        }
    }
    Ok(out)
}

fn keyword<'a>(line: &Line<'a>) -> (&'a str, Line<'a>) {
    let text = line.text;
    let end = text.find(char::is_whitespace).unwrap_or(text.len());
    (&text[..end], line.after(end))
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let lines = significant_lines(text);

    // Symbols first, so that expressions may precede their declarations.
    let mut coords: Option<Vec<Symbol>> = None;
    let mut params: Vec<Symbol> = Vec::new();
    for line in &lines {
        match keyword(line) {
            ("coords", rest) => {
                if coords.is_some() {
                    return Err(line.semantic("duplicate `coords` line"));
                }
                let c = identifiers(&rest)?;
                if c.is_empty() {
                    return Err(line.semantic("`coords` needs at least one coordinate"));
                }
                coords = Some(c);
            }
            ("param", rest) => params.extend(identifiers(&rest)?),
            _ => {}
        }
    }
    let coords = coords.ok_or_else(|| SpecError::Missing("missing `coords` line".into()))?;
    for p in &params {
        if coords.contains(p) || params.iter().filter(|q| *q == p).count() > 1 {
            return Err(SpecError::Missing(format!("`{}` is declared twice", p.name())));
        }
    }
    let p = Parser {
        table: table(&coords, &params),
        coords,
        params,
    };
    let dim = p.dim();

    let mut name = None;
    let mut exclusions = Vec::new();
    let mut mode_kw: Option<(&str, usize)> = None;
    let mut vectors: Vec<Option<Vec<RatFn>>> = vec![None; dim];
    let mut brackets: Vec<Vec<Option<Vec<RatFn>>>> = vec![vec![None; dim]; dim];
    let mut act: Vec<Vec<Option<RatFn>>> = vec![vec![None; dim]; dim];
    let mut metric_identity = false;
    let mut metric: Vec<Vec<Option<RatFn>>> = vec![vec![None; dim]; dim];
    let mut xi = None;
    let mut phi: Option<Vec<Option<Vec<RatFn>>>> = None;
    let mut h: Option<Vec<Option<Vec<RatFn>>>> = None;
    let mut eta = None;
    let mut has_contact = false;
    let mut declare_k = None;
    let mut declare_mu = None;

    for line in &lines {
        let (kw, rest) = keyword(line);
        match kw {
            "coords" | "param" => {}
            "manifold" => {
                if name.is_some() {
                    return Err(line.semantic("duplicate `manifold` line"));
                }
                if rest.text.is_empty() {
                    return Err(line.syntax(rest.offset - line.offset, "expected a manifold name"));
                }
                name = Some(rest.text.to_string());
            }
            "assume" => {
                let (lhs, rhs) = rest
                    .split_once("!=")
                    .ok_or_else(|| line.syntax(0, "expected `assume <coord> != <rational>`"))?;
                let coord = p.coords[p.coord_index(line, lhs.text)?].clone();
                let value = p
                    .expr(&rhs)?
                    .as_constant()
                    .ok_or_else(|| line.semantic("`assume` needs a rational constant"))?;
                exclusions.push(Exclusion { coord, value });
            }
            "frame-mode" => {
                if mode_kw.is_some() {
                    return Err(line.semantic("duplicate `frame-mode` line"));
                }
                match rest.text {
                    "vector" | "bracket" => mode_kw = Some((rest.text, line.no)),
                    other => {
                        return Err(line.syntax(
                            rest.offset - line.offset,
                            format!("unknown frame mode `{other}` (expected vector or bracket)"),
                        ))
                    }
                }
            }
            "vector" => {
                let (lhs, rhs) = rest
                    .split_once("=")
                    .ok_or_else(|| line.syntax(0, "expected `vector E<i> = ...`"))?;
                let i = p.frame_index(line, lhs.text, lhs.offset - line.offset)?;
                if vectors[i].is_some() {
                    return Err(line.semantic(format!("E{} is defined twice", i + 1)));
                }
                vectors[i] = Some(p.coord_combination(&rhs)?);
            }
            "bracket" => {
                let (lhs, rhs) = rest
                    .split_once("=")
                    .ok_or_else(|| line.syntax(0, "expected `bracket [E<i>,E<j>] = ...`"))?;
                let inner = lhs
                    .text
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| line.syntax(lhs.offset - line.offset, "expected `[E<i>,E<j>]`"))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| line.syntax(lhs.offset - line.offset, "expected `[E<i>,E<j>]`"))?;
                let i = p.frame_index(line, a.trim(), lhs.offset - line.offset)?;
                let j = p.frame_index(line, b.trim(), lhs.offset - line.offset)?;
                if i == j {
                    return Err(line.semantic("a bracket needs two different frame vectors"));
                }
                if brackets[i][j].is_some() {
                    return Err(line.semantic(format!("[E{},E{}] is defined twice", i + 1, j + 1)));
                }
                let v = p.frame_combination(&rhs)?;
                brackets[j][i] = Some(v.iter().map(|c| -c).collect());
                brackets[i][j] = Some(v);
            }
            "act" => {
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| line.syntax(0, "expected `act E<i> : <coord> -> <expr>`"))?;
                let (e, c) = lhs
                    .split_once(":")
                    .ok_or_else(|| line.syntax(0, "expected `act E<i> : <coord> -> <expr>`"))?;
                let i = p.frame_index(line, e.text, e.offset - line.offset)?;
                let j = p.coord_index(line, c.text)?;
                if act[i][j].is_some() {
                    return Err(line.semantic(format!("E{}({}) is defined twice", i + 1, c.text)));
                }
                act[i][j] = Some(p.expr(&rhs)?);
            }
            "metric" => {
                if rest.text == "identity" {
                    metric_identity = true;
                    continue;
                }
                let (lhs, rhs) = rest
                    .split_once("=")
                    .ok_or_else(|| line.syntax(0, "expected `metric identity` or `metric g<i><j> = ...`"))?;
                let digits: Vec<usize> = lhs
                    .text
                    .strip_prefix('g')
                    .filter(|d| d.len() == 2)
                    .map(|d| d.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect())
                    .unwrap_or_default();
                if digits.len() != 2 || digits.iter().any(|&d| d == 0 || d > dim) {
                    return Err(line.syntax(lhs.offset - line.offset, format!("bad metric entry `{}`", lhs.text)));
                }
                let (i, j) = (digits[0] - 1, digits[1] - 1);
                if metric[i][j].is_some() {
                    return Err(line.semantic(format!("g{}{} is defined twice", i + 1, j + 1)));
                }
                metric[i][j] = Some(p.expr(&rhs)?);
            }
            "contact" => {
                has_contact = true;
                let (what, body) = keyword(&rest);
                match what {
                    "xi" => {
                        let rhs = body
                            .text
                            .strip_prefix('=')
                            .map(|_| body.after(1))
                            .ok_or_else(|| line.syntax(0, "expected `contact xi = ...`"))?;
                        if xi.is_some() {
                            return Err(line.semantic("xi is defined twice"));
                        }
                        xi = Some(p.frame_combination(&rhs)?);
                    }
                    "phi" | "h" => {
                        let body = body
                            .text
                            .strip_prefix(':')
                            .map(|_| body.after(1))
                            .ok_or_else(|| line.syntax(0, format!("expected `contact {what} : E<i> -> ...`")))?;
                        let (lhs, rhs) = body
                            .split_once("->")
                            .ok_or_else(|| line.syntax(0, format!("expected `contact {what} : E<i> -> ...`")))?;
                        let i = p.leading_frame(&lhs)?;
                        let rows = if what == "phi" { &mut phi } else { &mut h };
                        let rows = rows.get_or_insert_with(|| vec![None; dim]);
                        if rows[i].is_some() {
                            return Err(line.semantic(format!("{what} E{} is defined twice", i + 1)));
                        }
                        rows[i] = Some(p.frame_combination(&rhs)?);
                    }
                    "eta" => {
                        let body = body
                            .text
                            .strip_prefix(':')
                            .map(|_| body.after(1))
                            .ok_or_else(|| line.syntax(0, "expected `contact eta : <expr> ...`"))?;
                        if eta.is_some() {
                            return Err(line.semantic("eta is defined twice"));
                        }
                        let items = split_juxtaposed(body.text)
                            .into_iter()
                            .map(|(s, e)| p.expr(&body.slice(s, e)))
                            .collect::<Result<Vec<_>, _>>()?;
                        if items.len() != dim {
                            return Err(line.semantic(format!(
                                "eta needs {dim} components, found {}",
                                items.len()
                            )));
                        }
                        eta = Some(items);
                    }
                    other => {
                        return Err(line.syntax(
                            rest.offset - line.offset,
                            format!("unknown contact key `{other}`"),
                        ))
                    }
                }
            }
            "declare" => {
                let (lhs, rhs) = rest
                    .split_once("=")
                    .ok_or_else(|| line.syntax(0, "expected `declare k|mu = <expr>`"))?;
                let slot = match lhs.text {
                    "k" => &mut declare_k,
                    "mu" => &mut declare_mu,
                    other => {
                        return Err(line.syntax(
                            lhs.offset - line.offset,
                            format!("unknown declaration `{other}` (expected k or mu)"),
                        ))
                    }
                };
                if slot.is_some() {
                    return Err(line.semantic(format!("{} is declared twice", lhs.text)));
                }
                *slot = Some(p.expr(&rhs)?);
            }
            other => return Err(line.syntax(0, format!("unknown key `{other}`"))),
        }
    }

    let (mode_name, mode_line) =
        mode_kw.ok_or_else(|| SpecError::Missing("missing `frame-mode` line".into()))?;
    let has_vectors = vectors.iter().any(Option::is_some);
    let has_brackets = brackets.iter().flatten().any(Option::is_some) || act.iter().flatten().any(Option::is_some);
    let mode = if mode_name == "vector" {
        if has_brackets {
            return Err(SpecError::Semantic {
                line: mode_line,
                message: "`bracket`/`act` lines in vector mode".into(),
            });
        }
        let a = vectors
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| SpecError::Missing(format!("E{} has no `vector` line", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        FrameMode::Coordinate { a }
    } else {
        if has_vectors {
            return Err(SpecError::Semantic {
                line: mode_line,
                message: "`vector` lines in bracket mode".into(),
            });
        }
        let c = brackets
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.unwrap_or_else(|| vec![RatFn::zero(); dim]))
                    .collect()
            })
            .collect();
        let act = act
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        FrameMode::Bracket { c, act }
    };

    let any_entry = metric.iter().flatten().any(Option::is_some);
    let metric = match (metric_identity, any_entry) {
        (true, true) => return Err(SpecError::Missing("`metric identity` mixed with explicit entries".into())),
        (false, false) => return Err(SpecError::Missing("missing `metric` line".into())),
        (true, false) => symcore::linalg::identity(dim),
        (false, true) => {
            let mut g = vec![vec![RatFn::zero(); dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    if let Some(v) = metric[i][j].clone().or_else(|| metric[j][i].clone()) {
                        g[i][j] = v;
                    }
                }
            }
            g
        }
    };

    let rows = |r: Option<Vec<Option<Vec<RatFn>>>>| {
        r.map(|rows| {
            rows.into_iter()
                .map(|v| v.unwrap_or_else(|| vec![RatFn::zero(); dim]))
                .collect()
        })
    };
    let contact = has_contact.then(|| ContactDecl {
        xi,
        phi: rows(phi),
        eta,
        h: rows(h),
    });

    Ok(SpecFile {
        name: name.ok_or_else(|| SpecError::Missing("missing `manifold` line".into()))?,
        coords: p.coords,
        params: p.params,
        exclusions,
        mode,
        metric,
        contact,
        declare_k,
        declare_mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    const MINI: &str = "manifold m\ncoords x y\nframe-mode vector\nvector E1 = 1 dx\nvector E2 = x dx + dy\nmetric identity\n";

    #[test]
    fn vector_mode() {
        let s = parse_spec(MINI).unwrap();
        let FrameMode::Coordinate { a } = &s.mode else { panic!() };
        assert_eq!(a[1], vec![RatFn::var("x"), r(1)]);
        assert!(s.contact.is_none());
    }

    #[test]
    fn combinations() {
        let text = "manifold m\ncoords x y z\nparam t\nframe-mode bracket\n\
                    bracket [E1,E2] = 2/y E2 - E1 + (t + 1)*E3\nmetric identity\n\
                    contact phi : E1 -> -E2\ncontact phi : E3 -> 0\ncontact eta : 0 0 1\n";
        let s = parse_spec(text).unwrap();
        let FrameMode::Bracket { c, .. } = &s.mode else { panic!() };
        assert_eq!(c[0][1][0], r(-1));
        assert_eq!(c[0][1][1].to_string(), "2/y");
        assert_eq!(c[0][1][2].to_string(), "t + 1");
        assert_eq!(c[1][0][0], r(1));
        let phi = s.contact.as_ref().unwrap().phi.as_ref().unwrap();
        assert_eq!(phi[0], vec![r(0), r(-1), r(0)]);
        assert_eq!(phi[1], vec![r(0); 3]);
        assert_eq!(s.contact.unwrap().eta.unwrap(), vec![r(0), r(0), r(1)]);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = MINI.replace("x dx + dy", "x dx + 2 y");
        assert!(matches!(parse_spec(&bad), Err(SpecError::Syntax { line: 5, .. })));
        let unknown = format!("{MINI}colour red\n");
        assert_eq!(
            parse_spec(&unknown).unwrap_err().to_string(),
            "line 7, column 1: unknown key `colour`"
        );
        let sym = MINI.replace("x dx + dy", "q dx + dy");
        assert_eq!(
            parse_spec(&sym).unwrap_err().to_string(),
            "line 5, column 13: unknown symbol `q`"
        );
        let dup = format!("{MINI}vector E1 = 1 dy\n");
        assert!(matches!(parse_spec(&dup), Err(SpecError::Semantic { line: 7, .. })));
        let range = MINI.replace("vector E2", "vector E3");
        assert!(matches!(parse_spec(&range), Err(SpecError::Semantic { line: 5, .. })));
        let missing = MINI.replace("metric identity\n", "");
        assert!(matches!(parse_spec(&missing), Err(SpecError::Missing(_))));
    }

    #[test]
    fn explicit_metric_is_symmetrized() {
        let text = MINI.replace("metric identity", "metric g11 = 2\nmetric g12 = x\nmetric g22 = 1");
        let s = parse_spec(&text).unwrap();
        assert_eq!(s.metric[1][0], RatFn::var("x"));
        assert_eq!(s.metric[0][0], r(2));
    }

    #[test]
    fn exclusions() {
        let text = format!("{MINI}assume y != 1/2\n");
        let s = parse_spec(&text).unwrap();
        assert_eq!(s.exclusions[0].coord.name(), "y");
        assert_eq!(RatFn::constant(s.exclusions[0].value.clone()), RatFn::from_ratio(1, 2));
    }
}
