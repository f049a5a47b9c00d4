# Copyright 2026 The oscnet Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Writes scikit-learn's 8x8 handwritten digits as IDX files.

A 10-class grayscale stand-in for CIFAR-10 that ships with scikit-learn, so
the CNN comparison can run offline. Pixels 0..16 are scaled to 0..255; the
first 1297 samples become the training split and the remaining 500 the
validation split.

  python3 tools/make_digits_idx.py tests/data
"""

import os
import struct
import sys

import numpy as np
from sklearn.datasets import load_digits

TRAIN = 1297


def write_images(path, images):
  n, rows, cols = images.shape
  with open(path, "wb") as f:
    f.write(struct.pack(">IIII", 0x00000803, n, rows, cols))
    f.write(images.astype(np.uint8).tobytes())


def write_labels(path, labels):
  with open(path, "wb") as f:
    f.write(struct.pack(">II", 0x00000801, len(labels)))
    f.write(labels.astype(np.uint8).tobytes())


def main():
  out = sys.argv[1] if len(sys.argv) > 1 else "."
  os.makedirs(out, exist_ok=True)
  digits = load_digits()
  images = np.rint(digits.images * (255.0 / 16.0))
  labels = digits.target
  write_images(os.path.join(out, "digits-train-images.idx"), images[:TRAIN])
  write_labels(os.path.join(out, "digits-train-labels.idx"), labels[:TRAIN])
  write_images(os.path.join(out, "digits-val-images.idx"), images[TRAIN:])
  write_labels(os.path.join(out, "digits-val-labels.idx"), labels[TRAIN:])


if __name__ == "__main__":
  main()
