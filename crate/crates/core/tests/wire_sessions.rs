use std::io::Cursor;
use std::net::{TcpListener, TcpStream};
use std::thread;

use pairid::algebra::{GroupSuite, Transparent};
use pairid::curve::{CurveParams, TateBackend};
use pairid::id::{keygen, run_session, MessageCodec, SchemeError, SchemeId, SchemeKeyPair};
use pairid::wire::{
    frame_decode, frame_encode, read_frame, run_verifier, serve_prover, write_frame, Frame, Hello, Tag, WireError,
    MAX_FRAME,
};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn transparent(p: u64) -> GroupSuite<Transparent> {
    GroupSuite::new(Transparent::new(p).unwrap())
}

fn socket_pair() -> (TcpStream, TcpStream) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let client = TcpStream::connect(listener.local_addr().unwrap()).unwrap();
    let (server, _) = listener.accept().unwrap();
    (server, client)
}

fn key(scheme: SchemeId, suite: &GroupSuite<Transparent>, seed: u64) -> SchemeKeyPair<Transparent> {
    keygen(scheme, suite, &mut ChaCha20Rng::seed_from_u64(seed)).unwrap()
}

#[test]
fn every_scheme_matches_in_process_runs() {
    let suite = transparent(1009);
    for scheme in SchemeId::ALL {
        let kp = key(scheme, &suite, 1);
        for seed in 0..4 {
            let (mut server, mut client) = socket_pair();
            let prover_key = kp.clone();
            let h = thread::spawn(move || serve_prover(&transparent(1009), &prover_key, &mut server, seed));
            let wired = run_verifier(&suite, &kp.public, &mut client, seed).unwrap();
            let local = run_session(scheme, &kp, &suite.fork(), seed).unwrap();
            assert_eq!(wired, local, "{scheme} seed {seed}");
            if local.decision.is_accept() {
                assert_eq!(h.join().unwrap().unwrap(), local);
            }
        }
    }
}

#[test]
fn curve_sessions_over_tcp() {
    let suite = GroupSuite::new(TateBackend::new(CurveParams::q83()));
    for scheme in SchemeId::ALL {
        let kp = keygen(scheme, &suite, &mut ChaCha20Rng::seed_from_u64(2)).unwrap();
        let (mut server, mut client) = socket_pair();
        let prover_key = kp.clone();
        let h = thread::spawn(move || {
            let suite = GroupSuite::new(TateBackend::new(CurveParams::q83()));
            serve_prover(&suite, &prover_key, &mut server, 5)
        });
        let wired = run_verifier(&suite, &kp.public, &mut client, 5).unwrap();
        let codec = MessageCodec::new(suite.backend(), kp.public.challenge_bits());
        let local = run_session(scheme, &kp, &suite.fork(), 5).unwrap();
        assert_eq!(wired.to_record(&codec).to_string(), local.to_record(&codec).to_string());
        let _ = h.join().unwrap();
    }
}

#[test]
fn wrong_key_is_rejected_and_prover_learns_it() {
    let suite = transparent(1009);
    for scheme in [SchemeId::Blsid, SchemeId::Cdhid, SchemeId::Scl, SchemeId::Hls] {
        let real = key(scheme, &suite, 10);
        let other = key(scheme, &suite, 11);
        let (mut server, mut client) = socket_pair();
        let h = thread::spawn(move || serve_prover(&transparent(1009), &other, &mut server, 3));
        let t = run_verifier(&suite, &real.public, &mut client, 3).unwrap();
        assert!(!t.decision.is_accept(), "{scheme}");
        assert!(matches!(h.join().unwrap(), Err(WireError::VerifyReject | WireError::Scheme(_))), "{scheme}");
    }
}

#[test]
fn mismatched_hello_is_a_protocol_violation() {
    let suite = transparent(1009);
    let prover_key = key(SchemeId::Owfid, &suite, 1);
    let verifier_key = key(SchemeId::Cdhid, &suite, 1);
    let (mut server, mut client) = socket_pair();
    let h = thread::spawn(move || serve_prover(&transparent(1009), &prover_key, &mut server, 0));
    let v = run_verifier(&suite, &verifier_key.public, &mut client, 0);
    assert!(matches!(h.join().unwrap(), Err(WireError::ProtocolViolation(_))));
    assert!(matches!(v, Err(WireError::Peer(_))));
}

#[test]
fn response_before_commitment_is_rejected_by_verifier() {
    let suite = transparent(1009);
    let kp = key(SchemeId::Owfid, &suite, 4);
    let hello = Hello::for_key(&suite, &kp.public);
    let (mut server, mut client) = socket_pair();
    let h = thread::spawn(move || {
        let got = read_frame(&mut server).unwrap();
        assert_eq!(got.tag, Tag::Hello);
        write_frame(&mut server, &Frame::new(Tag::Hello, hello.encode())).unwrap();
        write_frame(&mut server, &Frame::new(Tag::Response, vec![0; 6])).unwrap();
        read_frame(&mut server).unwrap()
    });
    let v = run_verifier(&suite, &kp.public, &mut client, 0);
    assert!(matches!(v, Err(WireError::ProtocolViolation(_))), "{v:?}");
    assert_eq!(h.join().unwrap().tag, Tag::Error);
}

#[test]
fn response_instead_of_challenge_is_rejected_by_prover() {
    let suite = transparent(1009);
    for scheme in SchemeId::ALL {
        let kp = key(scheme, &suite, 4);
        let hello = Hello::for_key(&suite, &kp.public);
        let (mut server, mut client) = socket_pair();
        let prover_key = kp.clone();
        let h = thread::spawn(move || serve_prover(&transparent(1009), &prover_key, &mut server, 0));
        write_frame(&mut client, &Frame::new(Tag::Hello, hello.encode())).unwrap();
        assert_eq!(read_frame(&mut client).unwrap().tag, Tag::Hello);
        if scheme.has_commitment() {
            assert_eq!(read_frame(&mut client).unwrap().tag, Tag::Commitment);
        }
        write_frame(&mut client, &Frame::new(Tag::Response, vec![1, 2])).unwrap();
        assert!(matches!(h.join().unwrap(), Err(WireError::ProtocolViolation(_))), "{scheme}");
        assert_eq!(read_frame(&mut client).unwrap().tag, Tag::Error);
    }
}

#[test]
fn scl_abort_reaches_the_verifier_as_reject() {
    let suite = transparent(11);
    let kp = key(SchemeId::Scl, &suite, 9);
    let seed = (0..1000)
        .find(|&s| run_session(SchemeId::Scl, &kp, &suite.fork(), s).unwrap().response.is_empty())
        .expect("an aborting seed at p = 11");
    let (mut server, mut client) = socket_pair();
    let prover_key = kp.clone();
    let h = thread::spawn(move || serve_prover(&transparent(11), &prover_key, &mut server, seed));
    let t = run_verifier(&suite, &kp.public, &mut client, seed).unwrap();
    assert!(!t.decision.is_accept() && t.response.is_empty());
    assert!(matches!(h.join().unwrap(), Err(WireError::Scheme(SchemeError::ZeroExponent))));
}

#[test]
fn hangup_and_bad_frames() {
    let suite = transparent(101);
    let kp = key(SchemeId::Cdhid, &suite, 1);
    let (server, mut client) = socket_pair();
    drop(server);
    assert!(matches!(
        run_verifier(&suite, &kp.public, &mut client, 0),
        Err(WireError::TransportClosed | WireError::Io(_))
    ));

    let bytes = frame_encode(&Frame::new(Tag::Challenge, vec![9; 10]));
    assert!(matches!(frame_decode(&bytes[..8]), Err(WireError::ShortFrame { .. })));
    assert!(matches!(read_frame(&mut Cursor::new(&bytes[..8])), Err(WireError::ShortFrame { .. })));
    let mut extra = bytes.clone();
    extra.push(0);
    assert!(matches!(frame_decode(&extra), Err(WireError::LengthMismatch { .. })));
    let huge = (MAX_FRAME + 1).to_be_bytes();
    assert!(matches!(read_frame(&mut Cursor::new(huge)), Err(WireError::LengthMismatch { .. })));
    assert!(matches!(read_frame(&mut Cursor::new(Vec::<u8>::new())), Err(WireError::TransportClosed)));
}
