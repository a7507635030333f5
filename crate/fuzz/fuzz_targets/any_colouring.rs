#![no_main]

use gallai::format::{self, AnyColouring};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match format::parse_any_colouring(text) {
        Ok(AnyColouring::Complete(c)) => assert_eq!(format::write_colouring(&c), text),
        Ok(AnyColouring::Host(h)) => assert_eq!(format::write_host_colouring(&h), text),
        Err(_) => {}
    }
});
