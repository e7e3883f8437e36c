use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
	#[error("domain mismatch between operands")]
	DomainMismatch,
	#[error("dimension mismatch: {0}")]
	DimensionMismatch(String),
	#[error("division by zero")]
	DivisionByZero,
	#[error("the zero ideal is not allowed here: {0}")]
	ZeroIdeal(String),
	#[error("ideal needs at least one generator")]
	EmptyGenerators,
	#[error("element is not divisible")]
	NotDivisible,
	#[error("not invertible: {0}")]
	NotInvertible(String),
	#[error("unsupported domain parameter: {0}")]
	BadDomain(String),
	#[error("precondition failed: {0}")]
	Precondition(String),
	#[error("internal invariant violated: {0}")]
	InvariantViolation(String),
	#[error("iteration limit exceeded in {0}")]
	IterationLimit(String),
	#[error("input is not in the expected form: {0}")]
	BadInput(String),
	#[error("definite negative verdict: {0}")]
	Negative(String),
}

pub type Result<T> = std::result::Result<T, Error>;
