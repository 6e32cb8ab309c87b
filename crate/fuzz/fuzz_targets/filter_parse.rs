//! Filter parsing must never panic, and accepted filters must round-trip
//! through their display form.

#![no_main]

use libfuzzer_sys::fuzz_target;
use semilab::census::FilterExpr;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(expr) = text.parse::<FilterExpr>() {
        let printed = expr.to_string();
        assert_eq!(printed.parse::<FilterExpr>().expect("display forms parse"), expr);
    }
});
