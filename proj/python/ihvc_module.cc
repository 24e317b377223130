// Copyright 2026 The IHVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Structured values cross the boundary as JSON text in
// the same schema the CLI reads and writes; ihvc/__init__.py wraps them.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ihvc/bitstream.h"
#include "ihvc/body_model.h"
#include "ihvc/error.h"
#include "ihvc/image.h"
#include "ihvc/json_io.h"
#include "ihvc/param_codec.h"
#include "ihvc/rd_eval.h"
#include "ihvc/semantics.h"
#include "ihvc/synth.h"
#include "ihvc/warp_gen.h"

namespace py = pybind11;

namespace ihvc {
namespace {

std::span<const std::uint8_t> AsSpan(const std::string& bytes) {
  return {reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()};
}

py::bytes ToBytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

py::array_t<std::uint8_t> ToArray(const Image& img) {
  py::array_t<std::uint8_t> out({img.height, img.width, 3});
  std::copy(img.rgb.begin(), img.rgb.end(), out.mutable_data());
  return out;
}

QuantConfig StepsFrom(const std::vector<double>& steps) {
  if (steps.empty()) return QuantConfig{};
  if (steps.size() != 4) {
    throw Error(ErrorCode::kValidation, "steps takes 4 values");
  }
  return {steps[0], steps[1], steps[2], steps[3]};
}

std::vector<SemanticVector> Frames(const DecodedSemantics& decoded,
                                   const std::string& edits_json) {
  if (edits_json.empty()) return decoded.frames;
  const auto script = EditScriptFromJson(Json::parse(edits_json));
  return ApplyEditScript(decoded.frames, script);
}

}  // namespace
}  // namespace ihvc

PYBIND11_MODULE(_core, m) {
  using namespace ihvc;
  m.doc() = "Interactive semantic human-video codec";

  static py::exception<Error> error(m, "IhvcError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(ErrorCodeName(e.code())) + ": " +
                            e.what())
                               .c_str());
    }
  });

  m.attr("FULL_DIMS") = kFullParamDims;
  m.attr("SEMANTIC_DIMS") = kSemanticDims;
  m.attr("KEY_DERIVED_DIMS") = kKeyDerivedDims;

  m.def("split_params",
        [](const std::array<double, kFullParamDims>& flat) {
          const auto [sem, derived] =
              SplitFullParams(FullBodyParams::FromFlat(flat));
          return py::make_tuple(sem.Flatten(), derived.Flatten());
        },
        py::arg("full"));

  m.def("merge_params",
        [](const std::array<double, kSemanticDims>& sem,
           const std::array<double, kKeyDerivedDims>& derived) {
          KeyDerivedParams d;
          std::size_t k = 0;
          for (double& v : d.shape) v = derived[k++];
          for (Vec3& row : d.body_core)
            for (double& v : row) v = derived[k++];
          return MergeParams(SemanticVector::FromFlat(sem), d).Flatten();
        },
        py::arg("semantics"), py::arg("key_derived"));

  m.def("apply_edit",
        [](const std::array<double, kSemanticDims>& sem,
           const std::string& command_json) {
          return ApplyEdit(SemanticVector::FromFlat(sem),
                           EditCommandFromJson(Json::parse(command_json)))
              .Flatten();
        },
        py::arg("semantics"), py::arg("command_json"));

  m.def("synthesize",
        [](const std::string& preset, int frames, double fps,
           std::uint64_t seed, int width, int height, double amplitude) {
          const auto p = ParsePreset(preset);
          if (!p) throw Error(ErrorCode::kValidation, "unknown preset '" + preset + "'");
          SynthOptions opt;
          opt.preset = *p;
          opt.frames = frames;
          opt.fps = fps;
          opt.seed = seed;
          opt.width = width;
          opt.height = height;
          opt.amplitude = amplitude;
          const SynthResult r = Synthesize(opt);
          return py::make_tuple(ToJson(r.doc).dump(), ToBytes(EncodePng(r.key)));
        },
        py::arg("preset"), py::arg("frames") = 150, py::arg("fps") = 30.0,
        py::arg("seed") = 1, py::arg("width") = 384, py::arg("height") = 384,
        py::arg("amplitude") = 0.3);

  m.def("encode",
        [](const std::string& semantics_json, const std::string& key_png,
           const std::vector<double>& steps) {
          const SemanticsDocument doc =
              SemanticsDocumentFromJson(Json::parse(semantics_json));
          const Image key = DecodePng(AsSpan(key_png));
          if (key.width != doc.width || key.height != doc.height) {
            throw Error(ErrorCode::kDimensionMismatch,
                        "key frame dimensions mismatch");
          }
          const auto result =
              EncodeSequence(doc.key_full_params, AsSpan(key_png), doc.frames,
                             StepsFrom(steps), doc.width, doc.height, doc.fps);
          return ToBytes(Serialize(result.coded));
        },
        py::arg("semantics_json"), py::arg("key_png"),
        py::arg("steps") = std::vector<double>{});

  m.def("decode",
        [](const std::string& stream) {
          const DecodedSemantics d = DecodeSequence(Parse(AsSpan(stream)));
          SemanticsDocument doc;
          doc.width = d.header.width;
          doc.height = d.header.height;
          doc.fps = d.header.fps();
          doc.key_full_params = d.key_params;
          doc.frames = d.frames;
          return py::make_tuple(ToJson(doc).dump(), ToBytes(d.key_payload));
        },
        py::arg("stream"));

  m.def("header",
        [](const std::string& stream) {
          const CodedSequence cs = Parse(AsSpan(stream));
          const SequenceHeader& h = cs.header;
          return Json{{"width", h.width},
                      {"height", h.height},
                      {"fps", h.fps()},
                      {"fps_num", h.fps_num},
                      {"fps_den", h.fps_den},
                      {"frame_count", h.frame_count},
                      {"steps", ToJson(h.steps)}}
              .dump();
        },
        py::arg("stream"));

  m.def("measure_rate",
        [](const std::string& stream, bool include_key) {
          return MeasureRate(Parse(AsSpan(stream)), include_key);
        },
        py::arg("stream"), py::arg("include_key") = false);

  m.def("render",
        [](const std::string& stream, const std::string& edits_json) {
          const DecodedSemantics d = DecodeSequence(Parse(AsSpan(stream)));
          const std::vector<SemanticVector> frames = Frames(d, edits_json);
          std::vector<Image> images;
          {
            py::gil_scoped_release release;
            images = RenderFrames(FrameSynthesizer(d.key_params, DecodeKeyImage(d)),
                                  frames);
          }
          py::list out;
          for (const Image& img : images) out.append(ToArray(img));
          return out;
        },
        py::arg("stream"), py::arg("edits_json") = "");

  m.def("render_frame",
        [](const std::string& stream, std::uint32_t index,
           const std::string& edits_json) {
          const DecodedSemantics d = DecodeSequence(Parse(AsSpan(stream)));
          const std::vector<SemanticVector> frames = Frames(d, edits_json);
          if (index >= frames.size()) {
            throw Error(ErrorCode::kValidation, "frame " + std::to_string(index) +
                                                    " out of range");
          }
          Image img;
          {
            py::gil_scoped_release release;
            img = FrameSynthesizer(d.key_params, DecodeKeyImage(d))
                      .Render(frames[index]);
          }
          return ToArray(img);
        },
        py::arg("stream"), py::arg("index"), py::arg("edits_json") = "");

  m.def("pixel_hash",
        [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>
               rgb) {
          if (rgb.ndim() != 3 || rgb.shape(2) != 3) {
            throw Error(ErrorCode::kValidation, "expected an (h, w, 3) array");
          }
          Image img(static_cast<int>(rgb.shape(1)), static_cast<int>(rgb.shape(0)));
          std::copy(rgb.data(), rgb.data() + img.rgb.size(), img.rgb.begin());
          return PixelHash(img);
        },
        py::arg("rgb"));

  m.def("rd_eval",
        [](const std::string& semantics_json, const std::string& key_png,
           const std::vector<std::vector<double>>& steps) {
          const SemanticsDocument doc =
              SemanticsDocumentFromJson(Json::parse(semantics_json));
          std::vector<QuantConfig> configs;
          for (const auto& s : steps) configs.push_back(StepsFrom(s));
          return RdTableToJson(EvaluateRd(doc, AsSpan(key_png), configs)).dump();
        },
        py::arg("semantics_json"), py::arg("key_png"), py::arg("steps"));

  m.def("body_template",
        [](const std::array<double, kShapeDims>& shape) {
          return TemplateToJson(BuildTemplate(shape)).dump();
        },
        py::arg("shape") = std::array<double, kShapeDims>{});
}
