#![no_main]

use libfuzzer_sys::fuzz_target;

// One argument per line; the program name is prepended.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let argv = std::iter::once("pentadgf").chain(text.split('\n'));
        let _ = pentagonal_cli::parse_args(argv);
    }
});
