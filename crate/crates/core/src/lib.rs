pub mod bell;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod rng;
pub mod states;
pub mod clifford;
pub mod bounds;
pub mod locc;
pub mod commitment;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/labels.md")]
    pub mod labels {}
    #[doc = include_str!("../../../book/src/states.md")]
    pub mod states {}
    #[doc = include_str!("../../../book/src/attacks.md")]
    pub mod attacks {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/clifford.md")]
    pub mod clifford {}
    #[doc = include_str!("../../../book/src/commitment.md")]
    pub mod commitment {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
