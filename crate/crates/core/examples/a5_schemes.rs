//! Builds every generator scheme on the A5 exponentiation of degree 3125 and
//! prints the size and verified order of each set.
//!
//! Run with `cargo run --release -p wreathgen-core --example a5_schemes`.

use wreathgen_core::perm::catalog;
use wreathgen_core::schemes::{build_scheme, verify_generation, Scheme};
use wreathgen_core::tower::TowerSpec;
use wreathgen_core::{Mode, DEFAULT_DEGREE_CAP};

fn main() -> Result<(), wreathgen_core::Error> {
    let a5 = catalog::a5();
    let spec = TowerSpec::iterated_exponentiation(vec![("A5".into(), a5.clone()), ("A5".into(), a5)])?;
    for scheme in Scheme::ALL {
        let out = build_scheme(scheme, &spec, 2, DEFAULT_DEGREE_CAP, Mode::Strict)?;
        let report = verify_generation(&out.set, DEFAULT_DEGREE_CAP)?;
        let order = report.computed_order.map(|o| o.to_decimal()).unwrap_or_default();
        println!("{scheme}: {} generators, order {order}, {}", out.set.len(), report.verdict);
    }
    Ok(())
}
