//! Pinned digests for fixed inputs. These freeze the exact behavior of the
//! walk, the quantization and the hex encoding together; any change to the
//! stepping order, rounding or block packing shows up here first.

use qhfm_core::{qhfm_hash, InstanceId, WalkParams};

fn hex(id: InstanceId, message: &[u8]) -> String {
    qhfm_hash(message, &id.params()).to_hex()
}

#[test]
fn empty_message_digests() {
    // With no steps taken, all probability sits at node 0, so block 0 is
    // 10^8 mod 2^m (0 for m = 8, 256 for m = 13) and every other block is 0.
    assert_eq!(hex(InstanceId::Bits296, b""), "0".repeat(74));
    assert_eq!(
        hex(InstanceId::Bits221, b""),
        format!("01{}", "0".repeat(54))
    );
    assert_eq!(hex(InstanceId::Bits200, b""), "0".repeat(50));
    assert_eq!(
        hex(InstanceId::Bits195, b""),
        format!("04{}", "0".repeat(47))
    );
    assert_eq!(hex(InstanceId::Bits120, b""), "0".repeat(30));
}

#[test]
fn three_byte_message_digests() {
    assert_eq!(
        hex(InstanceId::Bits296, b"abc"),
        "25008A00AC00D500BA001A006700ED0007032FA72B8902E30034006B0059005C002C00A300"
    );
    assert_eq!(
        hex(InstanceId::Bits221, b"abc"),
        "0725929AE297854AC098DB576E2BBA6AC846A0B9176F967B5774726F"
    );
    assert_eq!(
        hex(InstanceId::Bits200, b"abc"),
        "25008A00AC03D5A7BA891AE36734ED6B07592F5C2B2C02A300"
    );
    assert_eq!(
        hex(InstanceId::Bits195, b"abc"),
        "1C955E2B8A7C3D2B399B6D56C92E8613DD73F964E337475E5"
    );
    assert_eq!(
        hex(InstanceId::Bits120, b"abc"),
        "25F18A87ACCDD592A19E732C8CA3E5"
    );
}

#[test]
fn pangram_digest() {
    assert_eq!(
        hex(
            InstanceId::Bits200,
            b"The quick brown fox jumps over the lazy dog"
        ),
        "49B28F0ABFBB105B7B6A6C01E1E28CD09FF42896501187537F"
    );
}

#[test]
fn custom_shape_digest() {
    let params = WalkParams::new(
        5,
        4,
        8,
        std::f64::consts::FRAC_PI_4,
        std::f64::consts::FRAC_PI_3,
        std::f64::consts::FRAC_PI_4,
    )
    .unwrap();
    assert_eq!(qhfm_hash(b"abc", &params).to_hex(), "7BAE3");
}

#[test]
fn short_messages_leave_unreached_nodes_empty() {
    // An 8-bit message takes 8 steps, so nodes further than 8 from the
    // start on a 37-node cycle still hold zero probability and quantize to
    // zero blocks; the nonzero blocks cluster at both ends of the digest.
    let digest = qhfm_hash(b"a", &InstanceId::Bits296.params());
    let blocks = digest.blocks();
    assert!(blocks[9..29].iter().all(|&b| b == 0));
    assert!(blocks[..5].iter().any(|&b| b != 0));
    assert!(blocks[34..].iter().any(|&b| b != 0));
}
