#![no_main]

use libfuzzer_sys::fuzz_target;
use neuroevo::NoveltyMap;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(map) = NoveltyMap::parse_dump(20, text) {
        assert!(map.len() <= 20);
        let again = NoveltyMap::parse_dump(20, &map.dump()).expect("dump parses");
        assert_eq!(again, map);
    }
});
