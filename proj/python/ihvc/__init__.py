# Copyright 2026 The IHVC Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python interface to the interactive semantic human-video codec.

Semantics documents are plain dicts in the same schema as the CLI's JSON
files. Bitstreams and key images are ``bytes``; rendered frames are
``(height, width, 3)`` uint8 numpy arrays.
"""

import json

from . import _core
from ._core import (
    FULL_DIMS,
    KEY_DERIVED_DIMS,
    SEMANTIC_DIMS,
    IhvcError,
    measure_rate,
    merge_params,
    pixel_hash,
    split_params,
)

__all__ = [
    "FULL_DIMS",
    "KEY_DERIVED_DIMS",
    "SEMANTIC_DIMS",
    "IhvcError",
    "apply_edit",
    "body_template",
    "decode",
    "encode",
    "header",
    "measure_rate",
    "merge_params",
    "pixel_hash",
    "rd_eval",
    "render",
    "render_frame",
    "split_params",
    "synthesize",
]


def _edits_text(edits):
    if edits is None:
        return ""
    return json.dumps(list(edits))


def synthesize(preset, frames=150, fps=30.0, seed=1, width=384, height=384,
               amplitude=0.3):
    """Returns (semantics document, key PNG bytes) for a synthetic preset."""
    doc, key_png = _core.synthesize(preset, frames, fps, seed, width, height,
                                    amplitude)
    return json.loads(doc), key_png


def encode(document, key_png, steps=None):
    """Encodes a semantics document and key PNG into an .ihvc bitstream."""
    return _core.encode(json.dumps(document), key_png, list(steps or []))


def decode(stream):
    """Returns (semantics document, key payload bytes)."""
    doc, key = _core.decode(stream)
    return json.loads(doc), key


def header(stream):
    return json.loads(_core.header(stream))


def render(stream, edits=None):
    """Reconstructs every frame, optionally after an edit script."""
    return _core.render(stream, _edits_text(edits))


def render_frame(stream, index, edits=None):
    return _core.render_frame(stream, index, _edits_text(edits))


def apply_edit(semantics, command):
    """Applies one edit command (dict) to a flat 31-vector."""
    return list(_core.apply_edit(list(semantics), json.dumps(command)))


def rd_eval(document, key_png, steps):
    return json.loads(_core.rd_eval(json.dumps(document), key_png,
                                    [list(s) for s in steps]))


def body_template(shape=None):
    return json.loads(_core.body_template(list(shape or [0.0] * 10)))
