//! Ring-spec documents: a tree of ring constructions with their involutions.
//!
//! ```text
//! {
//!   schema: 1,                       // optional, must be 1
//!   ring: {kind: product, left: {kind: zmod, n: 2}, right: {kind: zmod, n: 2}},
//!   involution: {kind: swap},        // optional, see below
//!   settings: {max_order: 4096, format: human}   // optional
//! }
//! ```
//!
//! Ring kinds: `zmod {n}`, `gf {q}`, `product {left, right}`,
//! `matrix {base, n}`, `corner {base, p}`, `table {order, add, mul}` where
//! tables are row-major, flat or nested. A child (`left`, `right`, `base`)
//! is either a ring node or a full `{ring, involution}` node.
//!
//! Involution kinds and where they apply: `identity` (any commutative ring),
//! `frobenius` (`gf` with `q = p^2`), `swap` (`product` of two equal specs),
//! `componentwise` (`product`), `conjugate-transpose` (`matrix`),
//! `inherited` (`corner`), `table {star}` (any). When omitted, products
//! default to `componentwise`, matrices to `conjugate-transpose`, corners to
//! `inherited` and everything else to `identity`.

mod syntax;

use serde_json::{json, Map, Value as Json};
use thiserror::Error;

pub use syntax::SyntaxError;
use syntax::{Spanned, Value};

use crate::construct::{
    make_gf, make_matrix_ring, make_product, make_table_ring, make_zmod_with, BuildConfig,
};
use crate::error::RingError;
use crate::report::RenderMode;
use crate::ring::{ElementId, FiniteRing};
use crate::star::{attach_involution, make_corner_ring, StarRing};

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown {what} kind `{kind}` at line {line}, column {column}")]
    UnknownKind {
        what: &'static str,
        kind: String,
        line: usize,
        column: usize,
    },
    #[error("invalid document at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(
        "involution `{involution}` is not admissible at line {line}, column {column}: {reason}"
    )]
    InvolutionInadmissible {
        involution: String,
        reason: String,
        line: usize,
        column: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl From<SyntaxError> for SpecError {
    fn from(e: SyntaxError) -> Self {
        SpecError::Syntax {
            line: e.line,
            column: e.column,
            message: e.message,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    Gf {
        q: usize,
    },
    Product {
        left: Box<StarSpec>,
        right: Box<StarSpec>,
    },
    Matrix {
        base: Box<StarSpec>,
        n: usize,
    },
    Corner {
        base: Box<StarSpec>,
        p: u32,
    },
    Table {
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
    },
}

impl RingSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            RingSpec::Zmod { .. } => "zmod",
            RingSpec::Gf { .. } => "gf",
            RingSpec::Product { .. } => "product",
            RingSpec::Matrix { .. } => "matrix",
            RingSpec::Corner { .. } => "corner",
            RingSpec::Table { .. } => "table",
        }
    }

    pub fn default_involution(&self) -> InvolutionSpec {
        match self {
            RingSpec::Product { .. } => InvolutionSpec::Componentwise,
            RingSpec::Matrix { .. } => InvolutionSpec::ConjugateTranspose,
            RingSpec::Corner { .. } => InvolutionSpec::Inherited,
            _ => InvolutionSpec::Identity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionSpec {
    Identity,
    Frobenius,
    Swap,
    Componentwise,
    ConjugateTranspose,
    Inherited,
    Table { star: Vec<u32> },
}

impl InvolutionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            InvolutionSpec::Identity => "identity",
            InvolutionSpec::Frobenius => "frobenius",
            InvolutionSpec::Swap => "swap",
            InvolutionSpec::Componentwise => "componentwise",
            InvolutionSpec::ConjugateTranspose => "conjugate-transpose",
            InvolutionSpec::Inherited => "inherited",
            InvolutionSpec::Table { .. } => "table",
        }
    }

    /// Why this involution cannot be used on `ring`, if it cannot.
    pub fn inadmissible_reason(&self, ring: &RingSpec) -> Option<String> {
        let need = |kind: &str| {
            (ring.kind() != kind).then(|| {
                format!(
                    "`{}` needs a {kind} ring, found {}",
                    self.kind(),
                    ring.kind()
                )
            })
        };
        match self {
            InvolutionSpec::Identity | InvolutionSpec::Table { .. } => None,
            InvolutionSpec::Frobenius => match ring {
                RingSpec::Gf { q } if !crate::construct::is_prime(*q) => None,
                RingSpec::Gf { q } => Some(format!(
                    "frobenius is trivial on the prime field GF({q}); use identity"
                )),
                _ => need("gf"),
            },
            InvolutionSpec::Swap => match ring {
                RingSpec::Product { left, right } if left.ring == right.ring => None,
                RingSpec::Product { .. } => Some("swap needs two identical factors".to_string()),
                _ => need("product"),
            },
            InvolutionSpec::Componentwise => need("product"),
            InvolutionSpec::ConjugateTranspose => need("matrix"),
            InvolutionSpec::Inherited => need("corner"),
        }
    }
}

/// One node of the construction tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSpec {
    pub ring: RingSpec,
    pub involution: InvolutionSpec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub max_order: Option<usize>,
    pub format: Option<RenderMode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpecDocument {
    pub spec: StarSpec,
    pub settings: Settings,
}

impl StarSpec {
    pub fn new(ring: RingSpec, involution: InvolutionSpec) -> Self {
        StarSpec { ring, involution }
    }

    pub fn with_default_involution(ring: RingSpec) -> Self {
        let involution = ring.default_involution();
        StarSpec { ring, involution }
    }

    pub fn zmod(n: usize) -> Self {
        Self::with_default_involution(RingSpec::Zmod { n })
    }

    pub fn gf(q: usize) -> Self {
        Self::with_default_involution(RingSpec::Gf { q })
    }

    pub fn product(left: StarSpec, right: StarSpec, involution: InvolutionSpec) -> Self {
        StarSpec::new(
            RingSpec::Product {
                left: Box::new(left),
                right: Box::new(right),
            },
            involution,
        )
    }

    pub fn matrix(base: StarSpec, n: usize) -> Self {
        Self::with_default_involution(RingSpec::Matrix {
            base: Box::new(base),
            n,
        })
    }

    pub fn corner(base: StarSpec, p: ElementId) -> Self {
        Self::with_default_involution(RingSpec::Corner {
            base: Box::new(base),
            p: p.0,
        })
    }

    /// Builds and validates the described *-ring.
    pub fn build(&self, cfg: &BuildConfig) -> Result<StarRing, RingError> {
        if let Some(reason) = self.involution.inadmissible_reason(&self.ring) {
            return Err(RingError::InvolutionInadmissible {
                involution: self.involution.kind().to_string(),
                reason,
            });
        }
        match (&self.ring, &self.involution) {
            (RingSpec::Product { left, .. }, InvolutionSpec::Swap) => {
                StarRing::swap_product(&left.build_ring(cfg)?, cfg)
            }
            (RingSpec::Product { left, right }, InvolutionSpec::Componentwise) => {
                StarRing::componentwise_product(&left.build(cfg)?, &right.build(cfg)?, cfg)
            }
            (RingSpec::Matrix { base, n }, InvolutionSpec::ConjugateTranspose) => {
                StarRing::matrix(&base.build(cfg)?, *n, cfg)
            }
            (RingSpec::Corner { base, p }, InvolutionSpec::Inherited) => {
                Ok(make_corner_ring(&base.build(cfg)?, ElementId(*p))?.ring)
            }
            (RingSpec::Gf { q }, InvolutionSpec::Frobenius) => StarRing::frobenius(make_gf(*q)?),
            (_, InvolutionSpec::Identity) => StarRing::with_identity(self.build_ring(cfg)?),
            (_, InvolutionSpec::Table { star }) => attach_involution(
                self.build_ring(cfg)?,
                star.iter().map(|&v| ElementId(v)).collect(),
            ),
            _ => unreachable!("admissibility was checked above"),
        }
    }

    /// Builds only the underlying ring, ignoring the involution.
    pub fn build_ring(&self, cfg: &BuildConfig) -> Result<FiniteRing, RingError> {
        match &self.ring {
            RingSpec::Zmod { n } => make_zmod_with(*n, cfg),
            RingSpec::Gf { q } => make_gf(*q),
            RingSpec::Product { left, right } => {
                make_product(&left.build_ring(cfg)?, &right.build_ring(cfg)?, cfg)
            }
            RingSpec::Matrix { base, n } => make_matrix_ring(&base.build_ring(cfg)?, *n, cfg),
            RingSpec::Corner { base, p } => Ok(make_corner_ring(&base.build(cfg)?, ElementId(*p))?
                .ring
                .ring()
                .clone()),
            RingSpec::Table { order, add, mul } => make_table_ring(*order, add, mul),
        }
    }

    /// Canonical JSON value: full `{involution, ring}` form at every level.
    pub fn to_json(&self) -> Json {
        let ring = match &self.ring {
            RingSpec::Zmod { n } => json!({"kind": "zmod", "n": n}),
            RingSpec::Gf { q } => json!({"kind": "gf", "q": q}),
            RingSpec::Product { left, right } => {
                json!({"kind": "product", "left": left.to_json(), "right": right.to_json()})
            }
            RingSpec::Matrix { base, n } => {
                json!({"kind": "matrix", "base": base.to_json(), "n": n})
            }
            RingSpec::Corner { base, p } => {
                json!({"kind": "corner", "base": base.to_json(), "p": p})
            }
            RingSpec::Table { order, add, mul } => {
                json!({"kind": "table", "order": order, "add": add, "mul": mul})
            }
        };
        let involution = match &self.involution {
            InvolutionSpec::Table { star } => json!({"kind": "table", "star": star}),
            other => json!({"kind": other.kind()}),
        };
        json!({"involution": involution, "ring": ring})
    }
}

impl RingSpecDocument {
    pub fn new(spec: StarSpec) -> Self {
        RingSpecDocument {
            spec,
            settings: Settings::default(),
        }
    }

    /// Build configuration from the document, with an optional override of
    /// the size cap taking precedence.
    pub fn config(&self, max_order: Option<usize>) -> BuildConfig {
        max_order
            .or(self.settings.max_order)
            .map(BuildConfig::with_max_order)
            .unwrap_or_default()
    }

    pub fn build(&self, max_order: Option<usize>) -> Result<StarRing, RingError> {
        self.spec.build(&self.config(max_order))
    }

    pub fn to_json(&self) -> Json {
        let mut doc = match self.spec.to_json() {
            Json::Object(m) => m,
            _ => unreachable!(),
        };
        doc.insert("schema".into(), json!(SCHEMA_VERSION));
        let mut settings = Map::new();
        if let Some(m) = self.settings.max_order {
            settings.insert("max_order".into(), json!(m));
        }
        if let Some(f) = self.settings.format {
            settings.insert("format".into(), json!(f.name()));
        }
        if !settings.is_empty() {
            doc.insert("settings".into(), Json::Object(settings));
        }
        Json::Object(doc)
    }

    /// Canonical text: compact JSON with sorted keys and a trailing newline.
    pub fn to_canonical(&self) -> String {
        let mut s = self.to_json().to_string();
        s.push('\n');
        s
    }
}

// ---------------------------------------------------------------------------
// Conversion from the parsed syntax tree

fn schema_err<T>(at: &Spanned, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError::Schema {
        line: at.line,
        column: at.column,
        message: message.into(),
    })
}

struct Fields<'a> {
    node: &'a Spanned,
    fields: &'a [(String, Spanned)],
}

impl<'a> Fields<'a> {
    fn of(node: &'a Spanned, what: &str) -> Result<Self, SpecError> {
        match &node.value {
            Value::Object(fields) => Ok(Fields { node, fields }),
            other => schema_err(
                node,
                format!("{what} must be an object, found {}", other.type_name()),
            ),
        }
    }

    fn get(&self, key: &str) -> Option<&'a Spanned> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn require(&self, key: &str) -> Result<&'a Spanned, SpecError> {
        self.get(key).map_or_else(
            || schema_err(self.node, format!("missing field `{key}`")),
            Ok,
        )
    }

    fn only(&self, allowed: &[&str]) -> Result<(), SpecError> {
        for (k, v) in self.fields {
            if !allowed.contains(&k.as_str()) {
                return schema_err(
                    v,
                    format!("unexpected field `{k}` (allowed: {})", allowed.join(", ")),
                );
            }
        }
        Ok(())
    }

    fn uint(&self, key: &str) -> Result<usize, SpecError> {
        uint(self.require(key)?, key)
    }

    fn kind(&self) -> Result<(&'a str, &'a Spanned), SpecError> {
        let k = self.require("kind")?;
        match &k.value {
            Value::Str(s) => Ok((s.as_str(), k)),
            other => schema_err(
                k,
                format!("`kind` must be a string, found {}", other.type_name()),
            ),
        }
    }
}

fn uint(v: &Spanned, what: &str) -> Result<usize, SpecError> {
    match v.value {
        Value::Int(i) if i >= 0 => Ok(i as usize),
        _ => schema_err(v, format!("`{what}` must be a non-negative integer")),
    }
}

fn id_list(v: &Spanned, what: &str) -> Result<Vec<u32>, SpecError> {
    let Value::Array(items) = &v.value else {
        return schema_err(v, format!("`{what}` must be an array"));
    };
    let mut out = Vec::new();
    for item in items {
        match &item.value {
            Value::Array(_) => out.extend(id_list(item, what)?),
            _ => {
                let x = uint(item, what)?;
                if x > u32::MAX as usize {
                    return schema_err(item, format!("`{what}` entry {x} is too large"));
                }
                out.push(x as u32);
            }
        }
    }
    Ok(out)
}

fn child(v: &Spanned) -> Result<StarSpec, SpecError> {
    let f = Fields::of(v, "ring node")?;
    if f.get("ring").is_some() {
        star_node(v)
    } else {
        Ok(StarSpec::with_default_involution(ring_node(v)?))
    }
}

fn ring_node(v: &Spanned) -> Result<RingSpec, SpecError> {
    let f = Fields::of(v, "ring")?;
    let (kind, at) = f.kind()?;
    let spec = match kind {
        "zmod" => {
            f.only(&["kind", "n"])?;
            RingSpec::Zmod { n: f.uint("n")? }
        }
        "gf" => {
            f.only(&["kind", "q"])?;
            RingSpec::Gf { q: f.uint("q")? }
        }
        "product" => {
            f.only(&["kind", "left", "right"])?;
            RingSpec::Product {
                left: Box::new(child(f.require("left")?)?),
                right: Box::new(child(f.require("right")?)?),
            }
        }
        "matrix" => {
            f.only(&["kind", "base", "n"])?;
            RingSpec::Matrix {
                base: Box::new(child(f.require("base")?)?),
                n: f.uint("n")?,
            }
        }
        "corner" => {
            f.only(&["kind", "base", "p"])?;
            RingSpec::Corner {
                base: Box::new(child(f.require("base")?)?),
                p: f.uint("p")? as u32,
            }
        }
        "table" => {
            f.only(&["kind", "order", "add", "mul"])?;
            RingSpec::Table {
                order: f.uint("order")?,
                add: id_list(f.require("add")?, "add")?,
                mul: id_list(f.require("mul")?, "mul")?,
            }
        }
        other => {
            return Err(SpecError::UnknownKind {
                what: "ring",
                kind: other.to_string(),
                line: at.line,
                column: at.column,
            })
        }
    };
    Ok(spec)
}

fn involution_node(v: &Spanned) -> Result<InvolutionSpec, SpecError> {
    let (kind, at, fields) = match &v.value {
        Value::Str(s) => (s.as_str(), v, None),
        _ => {
            let f = Fields::of(v, "involution")?;
            let (kind, at) = f.kind()?;
            (kind, at, Some(f))
        }
    };
    let spec = match kind {
        "identity" => InvolutionSpec::Identity,
        "frobenius" => InvolutionSpec::Frobenius,
        "swap" => InvolutionSpec::Swap,
        "componentwise" => InvolutionSpec::Componentwise,
        "conjugate-transpose" => InvolutionSpec::ConjugateTranspose,
        "inherited" => InvolutionSpec::Inherited,
        "table" => {
            let Some(f) = &fields else {
                return schema_err(v, "a table involution needs a `star` field");
            };
            f.only(&["kind", "star"])?;
            return Ok(InvolutionSpec::Table {
                star: id_list(f.require("star")?, "star")?,
            });
        }
        other => {
            return Err(SpecError::UnknownKind {
                what: "involution",
                kind: other.to_string(),
                line: at.line,
                column: at.column,
            })
        }
    };
    if let Some(f) = fields {
        f.only(&["kind"])?;
    }
    Ok(spec)
}

fn star_node(v: &Spanned) -> Result<StarSpec, SpecError> {
    let f = Fields::of(v, "ring spec")?;
    f.only(&["ring", "involution", "schema", "settings"])?;
    let ring = ring_node(f.require("ring")?)?;
    let involution = match f.get("involution") {
        Some(inv) => {
            let spec = involution_node(inv)?;
            if let Some(reason) = spec.inadmissible_reason(&ring) {
                return Err(SpecError::InvolutionInadmissible {
                    involution: spec.kind().to_string(),
                    reason,
                    line: inv.line,
                    column: inv.column,
                });
            }
            spec
        }
        None => ring.default_involution(),
    };
    Ok(StarSpec { ring, involution })
}

fn document(v: &Spanned) -> Result<RingSpecDocument, SpecError> {
    let f = Fields::of(v, "document")?;
    if f.get("ring").is_none() && f.get("kind").is_some() {
        return Ok(RingSpecDocument::new(StarSpec::with_default_involution(
            ring_node(v)?,
        )));
    }
    if let Some(s) = f.get("schema") {
        if s.value != Value::Int(SCHEMA_VERSION) {
            return schema_err(
                s,
                format!("unsupported schema version (expected {SCHEMA_VERSION})"),
            );
        }
    }
    let mut settings = Settings::default();
    if let Some(sv) = f.get("settings") {
        let sf = Fields::of(sv, "settings")?;
        sf.only(&["max_order", "format"])?;
        if let Some(m) = sf.get("max_order") {
            settings.max_order = Some(uint(m, "max_order")?);
        }
        if let Some(fmt) = sf.get("format") {
            settings.format = Some(match &fmt.value {
                Value::Str(s) => s.parse().or_else(|e: String| schema_err(fmt, e))?,
                _ => return schema_err(fmt, "`format` must be a string"),
            });
        }
    }
    Ok(RingSpecDocument {
        spec: star_node(v)?,
        settings,
    })
}

pub fn parse_spec_document(text: &str) -> Result<RingSpecDocument, SpecError> {
    document(&syntax::parse(text)?)
}

/// Parses a list of documents (a top-level array) or a single document.
pub fn parse_spec_documents(text: &str) -> Result<Vec<RingSpecDocument>, SpecError> {
    let v = syntax::parse(text)?;
    match &v.value {
        Value::Array(items) => items.iter().map(document).collect(),
        _ => Ok(vec![document(&v)?]),
    }
}

/// Parses and builds a *-ring, honouring the document's size cap.
pub fn parse_ring_spec(text: &str) -> Result<StarRing, SpecError> {
    Ok(parse_spec_document(text)?.build(None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::InvolutionAxiom;

    #[test]
    fn zmod_identity() {
        let s = parse_ring_spec("{ring:{kind:zmod,n:4},involution:{kind:identity}}").unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.involution_name(), "identity");
    }

    #[test]
    fn swap_product() {
        let text = "{ring:{kind:product,left:{kind:zmod,n:2},right:{kind:zmod,n:2}},involution:{kind:swap}}";
        let s = parse_ring_spec(text).unwrap();
        let reference =
            StarRing::swap_product(&crate::make_zmod(2).unwrap(), &BuildConfig::default()).unwrap();
        assert_eq!(s, reference);
    }

    #[test]
    fn swap_needs_equal_factors() {
        let text = "{ring:{kind:product,left:{kind:zmod,n:2},right:{kind:zmod,n:3}},\n involution:{kind:swap}}";
        let err = parse_ring_spec(text).unwrap_err();
        assert!(
            matches!(
                err,
                SpecError::InvolutionInadmissible {
                    line: 2,
                    column: 13,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn unknown_kinds_and_fields() {
        assert!(matches!(
            parse_ring_spec("{ring:{kind:quaternion}}"),
            Err(SpecError::UnknownKind { what: "ring", .. })
        ));
        assert!(matches!(
            parse_ring_spec("{ring:{kind:zmod,n:2},involution:mirror}"),
            Err(SpecError::UnknownKind {
                what: "involution",
                ..
            })
        ));
        assert!(matches!(
            parse_ring_spec("{ring:{kind:zmod,m:2}}"),
            Err(SpecError::Schema { .. })
        ));
        assert!(matches!(
            parse_ring_spec("{schema: 2, ring:{kind:zmod,n:2}}"),
            Err(SpecError::Schema { .. })
        ));
        assert!(matches!(
            parse_ring_spec("{ring:"),
            Err(SpecError::Syntax { .. })
        ));
    }

    #[test]
    fn ring_errors_propagate() {
        let err =
            parse_ring_spec("{ring:{kind:matrix,base:{kind:zmod,n:2},n:2},involution:identity}")
                .unwrap_err();
        assert!(matches!(
            err,
            SpecError::Ring(RingError::InvolutionViolation {
                axiom: InvolutionAxiom::AntiMultiplicative,
                ..
            })
        ));
        let err = parse_ring_spec(
            "{ring:{kind:matrix,base:{kind:zmod,n:4},n:2},settings:{max_order:100}}",
        )
        .unwrap_err();
        assert!(matches!(
            err,
            SpecError::Ring(RingError::SizeCapExceeded {
                order: 256,
                cap: 100
            })
        ));
    }

    #[test]
    fn table_documents() {
        let text = "{ring:{kind:table,order:2,add:[[0,1],[1,0]],mul:[0,0,0,1]},involution:{kind:table,star:[0,1]}}";
        let s = parse_ring_spec(text).unwrap();
        assert!(s.ring().same_tables(&crate::make_zmod(2).unwrap()));
        let bad = "{ring:{kind:zmod,n:3},involution:{kind:table,star:[0,2,2]}}";
        assert!(matches!(
            parse_ring_spec(bad),
            Err(SpecError::Ring(RingError::InvolutionViolation { .. }))
        ));
    }

    #[test]
    fn nested_children_with_involutions() {
        let text = r#"{
            ring: {kind: product,
                   left: {ring: {kind: gf, q: 4}, involution: frobenius},
                   right: {kind: zmod, n: 2}},
        }"#;
        let doc = parse_spec_document(text).unwrap();
        assert_eq!(doc.spec.involution, InvolutionSpec::Componentwise);
        let s = doc.build(None).unwrap();
        assert_eq!(s.order(), 8);
        let round = parse_spec_document(&doc.to_canonical()).unwrap();
        assert_eq!(round, doc);
    }
}
