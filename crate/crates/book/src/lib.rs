//! Code listings from the guide in `book/`, compiled and run as doc-tests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/bits.md")]
pub mod bits {}
#[doc = include_str!("../../../book/src/forms.md")]
pub mod forms {}
#[doc = include_str!("../../../book/src/matrix.md")]
pub mod matrix {}
#[doc = include_str!("../../../book/src/constellations.md")]
pub mod constellations {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
