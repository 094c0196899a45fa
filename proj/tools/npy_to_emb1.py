#!/usr/bin/env python3
# Copyright 2026 mvox authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.
"""Convert .npy frame matrices to the EMB1 container.

Sidecar for whatever produces frame-level embeddings (an external model
inference script, a notebook, ...): dump one (n_frames, frame_dim) float
array per utterance as <segment-id>.npy, then convert the directory:

    python3 tools/npy_to_emb1.py --in-dir dumps/ --out-dir emb/ --tag wavlm_L1

The resulting <segment-id>.emb1 files feed `mvox import-embeddings`.

EMB1 layout (little-endian): magic "EMB1", u16 version=1, u32 n_frames,
u32 frame_dim, u16 tag length, tag bytes (UTF-8), then
n_frames*frame_dim IEEE-754 binary32 values, row-major.
"""

import argparse
import pathlib
import struct

import numpy as np


def write_emb1(path: pathlib.Path, frames: np.ndarray, tag: str) -> None:
    if frames.ndim != 2:
        raise ValueError(f"{path.name}: expected a 2-D array, got shape {frames.shape}")
    data = np.ascontiguousarray(frames, dtype="<f4")
    if not np.isfinite(data).all():
        raise ValueError(f"{path.name}: non-finite values in the frame matrix")
    tag_bytes = tag.encode("utf-8")
    with open(path, "wb") as f:
        f.write(b"EMB1")
        f.write(struct.pack("<HIIH", 1, data.shape[0], data.shape[1], len(tag_bytes)))
        f.write(tag_bytes)
        f.write(data.tobytes())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in-dir", required=True, help="directory of <id>.npy files")
    parser.add_argument("--out-dir", required=True, help="destination for <id>.emb1")
    parser.add_argument("--tag", required=True, help="source tag, e.g. model+layer")
    args = parser.parse_args()

    in_dir = pathlib.Path(args.in_dir)
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    count = 0
    for npy in sorted(in_dir.glob("*.npy")):
        write_emb1(out_dir / (npy.stem + ".emb1"), np.load(npy), args.tag)
        count += 1
    if count == 0:
        raise SystemExit(f"no .npy files found in {in_dir}")
    print(f"converted {count} files into {out_dir}")


if __name__ == "__main__":
    main()
