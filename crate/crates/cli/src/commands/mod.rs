pub mod detect;
pub mod encode;
pub mod harlow;
pub mod huffman;
pub mod stdp;
pub mod tree;
pub mod verify;
