use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the three filter axioms a subset violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterAxiom {
    /// The neutral element is missing.
    ContainsOne,
    /// `f` and `g` are members but `f·g` is not.
    Multiplicative { f: usize, g: usize },
    /// `f` is a member and `g` divides it, but `g` is not a member.
    DivisorStable { f: usize, g: usize },
}

impl FilterAxiom {
    /// 1, 2 or 3, in the order the axioms are usually listed.
    pub fn index(&self) -> u8 {
        match self {
            FilterAxiom::ContainsOne => 1,
            FilterAxiom::Multiplicative { .. } => 2,
            FilterAxiom::DivisorStable { .. } => 3,
        }
    }
}

impl std::fmt::Display for FilterAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FilterAxiom::ContainsOne => write!(f, "axiom (1): the neutral element is missing"),
            FilterAxiom::Multiplicative { f: a, g } => {
                write!(f, "axiom (2): {a} and {g} are members but their product is not")
            }
            FilterAxiom::DivisorStable { f: a, g } => {
                write!(f, "axiom (3): {g} divides the member {a} but is missing")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("multiplication is not associative: ({x}·{y})·{z} != {x}·({y}·{z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("multiplication is not commutative: {x}·{y} != {y}·{x}")]
    NonCommutative { x: usize, y: usize },
    #[error("{one} is not a neutral element: {one}·{x} = {got}")]
    BadIdentity { one: usize, x: usize, got: usize },
    #[error("{zero} is not an absorbing element: {zero}·{x} = {got}")]
    BadZero { zero: usize, x: usize, got: usize },
    #[error("ring axiom violated ({law}) at {elements:?}")]
    RingAxiom { law: &'static str, elements: Vec<usize> },
    #[error("index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("the monoid has no declared zero element")]
    NoZeroElement,
    #[error("the zero element equals the neutral element")]
    ZeroEqualsOne,
    #[error("the zero ring has no ultrafilters or prime ideals")]
    ZeroRing,
    #[error("{what} of size {size} exceeds the configured limit {limit}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("subset is not a filter: {0}")]
    NotAFilter(FilterAxiom),
    #[error("operands live on different carriers")]
    CarrierMismatch,
    #[error("not a monoid homomorphism: {0}")]
    NotAHom(String),
    #[error("not multiplicatively closed: {x}·{y} is missing")]
    NotMultiplicativelyClosed { x: usize, y: usize },
    #[error("not a pseudoideal: {x}·{y} is missing")]
    NotPseudoideal { x: usize, y: usize },
    #[error("the multiplicative system meets the pseudoideal in {0}")]
    NotDisjoint(usize),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("ring is not boolean: {0}² != {0}")]
    NotBoolean(usize),
    #[error("empty list")]
    EmptyList,
    #[error("vectors of different arity: {expected} and {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero element not allowed here")]
    ZeroElement,
    #[error("exponent bound must be at least 1")]
    BadBound,
    #[error("open sets not closed under {op}: {left} and {right}")]
    NotClosedUnderOps {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("malformed space: {0}")]
    BadSpace(String),
    #[error("map is not continuous: preimage of open {0} is not open")]
    NotContinuous(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("{law} violated: {detail}")]
    Violation { law: String, detail: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Shape(_) => "ShapeError",
            Error::NonAssociative { .. } => "NonAssociative",
            Error::NonCommutative { .. } => "NonCommutative",
            Error::BadIdentity { .. } => "BadIdentity",
            Error::BadZero { .. } => "BadZero",
            Error::RingAxiom { .. } => "RingAxiom",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NoZeroElement => "NoZeroElement",
            Error::ZeroEqualsOne => "ZeroEqualsOne",
            Error::ZeroRing => "ZeroRing",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotAFilter(_) => "NotAFilter",
            Error::CarrierMismatch => "CarrierMismatch",
            Error::NotAHom(_) => "NotAHom",
            Error::NotMultiplicativelyClosed { .. } => "NotMultiplicativelyClosed",
            Error::NotPseudoideal { .. } => "NotPseudoideal",
            Error::NotDisjoint(_) => "NotDisjoint",
            Error::NotAnIdeal(_) => "NotAnIdeal",
            Error::NotBoolean(_) => "NotBoolean",
            Error::EmptyList => "EmptyList",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroElement => "ZeroElement",
            Error::BadBound => "BadBound",
            Error::NotClosedUnderOps { .. } => "NotClosedUnderOps",
            Error::BadSpace(_) => "BadSpace",
            Error::NotContinuous(_) => "NotContinuous",
            Error::TypeMismatch(_) => "TypeMismatch",
            Error::Violation { .. } => "Violation",
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn cap(what: &'static str, size: usize, limit: usize) -> Self {
        Error::CapExceeded { what, size, limit }
    }

    pub(crate) fn violation(law: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Violation {
            law: law.into(),
            detail: detail.into(),
        }
    }
}
