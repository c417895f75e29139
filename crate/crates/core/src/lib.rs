//! Boomerang connectivity tables over GF(2^n).
//!
//! * [`field`]: GF(2^n) arithmetic, traces, representation enumeration.
//! * [`vecfun`]: functions as lookup tables, named power families.
//! * [`tables`]: brute-force engines for DDT, BCT, FBCT, DD, UBCT, LBCT, EBCT, DBCT.
//! * [`closed_form`]: closed-form predictions checked against [`tables`].
//! * [`equiv`]: CCZ, EA and affine transforms with index maps.
//! * [`reference`]: published table rows and the representation search.
//! * [`verify`]: the verification suites behind `boomtab verify`.

pub mod closed_form;
pub mod equiv;
pub mod error;
pub mod field;
pub mod lutfile;
pub mod poly;
pub mod reference;
pub mod sampling;
pub mod tables;
pub mod vecfun;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elem, FieldCtx};
pub use tables::TableKind;
pub use vecfun::{Family, VecFun};
