//! Error type shared by the whole library.
//!
//! Input validation failures are reported through [`Error`] with a witness
//! where one exists. Violations of facts that are theorems for valid input
//! (equivalence round trips, actor axioms, Hopf cross-checks) are *not*
//! errors: they panic, because they can only mean the implementation is
//! wrong.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} exceeds the configured bound {bound} (needed {needed})")]
    SizeLimit {
        what: &'static str,
        bound: usize,
        needed: usize,
    },

    #[error("word length exceeds {bound} letters")]
    WordTooLong { bound: usize },

    #[error("not a homomorphism: images[{x}*{y}] != images[{x}]*images[{y}]")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("generator images do not generate the target (missed element {missing})")]
    NotSurjective { missing: usize },

    #[error("generator images do not generate the source group")]
    DoesNotGenerate,

    #[error("subset is not a subgroup (first violation at element {witness})")]
    NotASubgroup { witness: usize },

    #[error("subgroup is not normal: conjugate of {n} by {g} escapes")]
    NotNormal { g: usize, n: usize },

    #[error("not a group action: {0}")]
    NotAnAction(String),

    #[error("word is not in the kernel subgroup (image {image} in the quotient)")]
    NotInKernel { image: usize },

    #[error("equivariance fails: mu(^g t) != g mu(t) g^-1 at g={g}, t={t}")]
    Equivariance { g: usize, t: usize },

    #[error("Peiffer identity fails: ^(mu t) t' != t t' t^-1 at t={t}, t_prime={t_prime}")]
    Peiffer { t: usize, t_prime: usize },

    #[error("morphism square mu' f = h mu fails at t={t}")]
    MorphismSquare { t: usize },

    #[error("morphism equivariance f(^g t) = ^(h g) f(t) fails at g={g}, t={t}")]
    MorphismEquivariance { g: usize, t: usize },

    #[error("cat1 identity {name} fails at x={x}")]
    Cat1Identity { name: &'static str, x: usize },

    #[error(
        "kernel commutator condition fails: d0(x)x^-1 and d1(y)y^-1 do not commute at x={x}, y={y}"
    )]
    KernelCommutator { x: usize, y: usize },

    #[error("not a derivation: d(g h) != d(g) * ^g d(h) at g={g}, h={h}")]
    NotADerivation { g: usize, h: usize },

    #[error("not a complement: {0}")]
    NotAComplement(String),

    #[error("module structure rejected: {0}")]
    NotAModule(String),

    #[error("module morphism condition fails: {0}")]
    NotAModuleMorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
