//! Word parsing must never panic, accepted words must round-trip through
//! the canonical display form, and small accepted words must multiply
//! without violating the normal-form invariants.

#![no_main]

use libfuzzer_sys::fuzz_target;
use semilab::fword::FWord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(word) = text.parse::<FWord>() {
        let printed = word.to_string();
        assert_eq!(printed.parse::<FWord>().expect("display forms parse"), word);
        if word.len() <= 1 << 16 {
            let square = word * word;
            assert_eq!(square.first(), word.first());
            assert!(square.is_idempotent() == (word.len() == 1));
        }
    }
});
