//! Runs the quick property suite.

use grprop::selftest::{run_all, Scale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in run_all(&Scale::quick())? {
        println!("{}", r.line());
    }
    Ok(())
}
