use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RazError {
    #[error("out of bounds: position {pos} in a sequence of {len}")]
    OutOfBounds { pos: usize, len: usize },
    #[error("internal Nil")]
    InternalNil,
    #[error("leaf-leaf should not arise")]
    LeafLeaf,
    #[error("malformed tree")]
    MalformedTree,
    #[error("empty tlist")]
    EmptyTList,
    #[error("no elements")]
    NoElements,
    #[error("empty sequence")]
    EmptySequence,
    #[error("level source exhausted")]
    LevelSourceExhausted,
    #[error("levels must be at least 1")]
    ZeroLevel,
}
