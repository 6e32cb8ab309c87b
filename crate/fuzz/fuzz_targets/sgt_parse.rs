//! Parsing arbitrary bytes must never panic, and any accepted table must
//! survive a format/parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = semilab::sgt::parse_table(text) {
        let printed = semilab::sgt::format(&table);
        let reparsed = semilab::sgt::parse_table(&printed).expect("printed tables parse");
        assert_eq!(reparsed, table);
        assert_eq!(semilab::sgt::format(&reparsed), printed);
    }
});
