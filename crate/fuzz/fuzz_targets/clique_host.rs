#![no_main]

use gallai::format;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = format::parse_clique_host(text) {
        assert_eq!(format::write_clique_host(&v), text);
    }
});
