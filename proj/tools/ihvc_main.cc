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

// ihvc: encode, decode, render and edit semantic human-video bitstreams.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ihvc/bitstream.h"
#include "ihvc/body_model.h"
#include "ihvc/error.h"
#include "ihvc/image.h"
#include "ihvc/json_io.h"
#include "ihvc/param_codec.h"
#include "ihvc/rd_eval.h"
#include "ihvc/service.h"
#include "ihvc/synth.h"
#include "ihvc/warp_gen.h"

namespace fs = std::filesystem;

namespace ihvc {
namespace {

constexpr int kExitValidation = 2;

QuantConfig ParseSteps(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kValidation, "--steps: bad number '" + item + "'");
    }
  }
  if (values.size() != 4) {
    throw Error(ErrorCode::kValidation,
                "--steps expects pose,trans,rot,loc (4 values)");
  }
  return {values[0], values[1], values[2], values[3]};
}

std::string FramePath(const std::string& dir, std::size_t index,
                      const char* ext) {
  char name[64];
  std::snprintf(name, sizeof(name), "frame_%04zu.%s", index, ext);
  return (fs::path(dir) / name).string();
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kValidation, path + ": " + e.what());
  }
}

void PrintJson(const Json& j) { std::cout << j.dump(2) << std::endl; }

struct EncodeArgs {
  std::string semantics;
  std::string key_png;
  std::string output;
  std::string steps;
  bool include_key = false;
};

int RunEncode(const EncodeArgs& args) {
  const SemanticsDocument doc = LoadSemanticsDocument(args.semantics);
  const std::vector<std::uint8_t> png = ReadFileBytes(args.key_png);
  const Image key = DecodePng(png);
  if (key.width != doc.width || key.height != doc.height) {
    throw Error(ErrorCode::kDimensionMismatch, "key frame dimensions mismatch");
  }
  const QuantConfig cfg = args.steps.empty() ? QuantConfig{} : ParseSteps(args.steps);
  const EncodeResult result = EncodeSequence(
      doc.key_full_params, png, doc.frames, cfg, doc.width, doc.height, doc.fps);
  WriteFileBytes(args.output, Serialize(result.coded));

  const CodedSequence& cs = result.coded;
  Json report{{"output", args.output},
              {"frame_count", cs.header.frame_count},
              {"width", cs.header.width},
              {"height", cs.header.height},
              {"fps", cs.header.fps()},
              {"steps", ToJson(cs.header.steps)},
              {"per_frame_bits", cs.per_frame_bits},
              {"bits_total", TotalBits(cs, args.include_key)},
              {"include_key", args.include_key},
              {"kbps_inc_key", MeasureRate(cs, true)}};
  if (cs.header.frame_count > 0) {
    report["kbps_ex_key"] = MeasureRate(cs, false);
    report["kbps"] = MeasureRate(cs, args.include_key);
  } else {
    report["kbps_ex_key"] = nullptr;
    report["kbps"] = args.include_key ? Json(MeasureRate(cs, true)) : Json();
  }
  PrintJson(report);
  return 0;
}

struct DecodeArgs {
  std::string input;
  std::string output;
  std::string key_png;
};

int RunDecode(const DecodeArgs& args) {
  const CodedSequence cs = Parse(ReadFileBytes(args.input));
  const DecodedSemantics decoded = DecodeSequence(cs);
  SemanticsDocument doc;
  doc.width = decoded.header.width;
  doc.height = decoded.header.height;
  doc.fps = decoded.header.fps();
  doc.key_full_params = decoded.key_params;
  doc.frames = decoded.frames;
  if (!args.output.empty()) SaveSemanticsDocument(args.output, doc);
  if (!args.key_png.empty()) WriteFileBytes(args.key_png, decoded.key_payload);
  PrintJson({{"frame_count", decoded.header.frame_count},
             {"width", doc.width},
             {"height", doc.height},
             {"fps", doc.fps},
             {"steps", ToJson(decoded.header.steps)},
             {"output", args.output.empty() ? Json() : Json(args.output)}});
  if (args.output.empty()) std::cout << ToJson(doc).dump() << std::endl;
  return 0;
}

struct RenderArgs {
  std::string input;
  std::string out_dir;
  std::string edits;
  std::string mesh_dir;
  std::string motion_dir;
};

int RunRender(const RenderArgs& args) {
  const CodedSequence cs = Parse(ReadFileBytes(args.input));
  const DecodedSemantics decoded = DecodeSequence(cs);
  std::vector<SemanticVector> frames = decoded.frames;
  if (!args.edits.empty()) {
    const auto script = EditScriptFromJson(ReadJsonFile(args.edits));
    frames = ApplyEditScript(frames, script);
  }
  const FrameSynthesizer synth(decoded.key_params, DecodeKeyImage(decoded));
  fs::create_directories(args.out_dir);
  for (const std::string& dir : {args.mesh_dir, args.motion_dir}) {
    if (!dir.empty()) fs::create_directories(dir);
  }
  Json hashes = Json::array();
  for (std::size_t l = 0; l < frames.size(); ++l) {
    const MotionField mf = synth.Motion(frames[l]);
    const Image image = Warp(synth.key_image(), mf);
    WritePng(FramePath(args.out_dir, l, "png"), image);
    hashes.push_back(PixelHash(image));
    if (!args.mesh_dir.empty()) {
      const BodyMesh mesh = PoseMesh(MergeParams(frames[l], synth.derived()),
                                     synth.body());
      const std::string obj = ToObj(mesh);
      WriteFileBytes(FramePath(args.mesh_dir, l, "obj"),
                     std::span(reinterpret_cast<const std::uint8_t*>(obj.data()),
                               obj.size()));
    }
    if (!args.motion_dir.empty()) {
      WriteFileBytes(FramePath(args.motion_dir, l, "flow"), FlowToF32Planes(mf));
      WriteFileBytes(FramePath(args.motion_dir, l, "pgm"), OcclusionToPgm(mf));
    }
  }
  PrintJson({{"frames", frames.size()},
             {"out", args.out_dir},
             {"pixel_sha256", std::move(hashes)}});
  return 0;
}

struct SynthArgs {
  std::string preset;
  SynthOptions options;
  std::string out_dir = ".";
};

int RunSynth(SynthArgs args) {
  auto preset = ParsePreset(args.preset);
  if (!preset) {
    throw Error(ErrorCode::kValidation, "unknown preset '" + args.preset + "'");
  }
  args.options.preset = *preset;
  const SynthResult result = Synthesize(args.options);
  fs::create_directories(args.out_dir);
  const std::string json_path = (fs::path(args.out_dir) / "semantics.json").string();
  const std::string png_path = (fs::path(args.out_dir) / "key.png").string();
  SaveSemanticsDocument(json_path, result.doc);
  WritePng(png_path, result.key);
  PrintJson({{"preset", args.preset},
             {"frames", result.doc.frames.size()},
             {"seed", args.options.seed},
             {"semantics", json_path},
             {"key", png_path}});
  return 0;
}

struct RdArgs {
  std::string semantics;
  std::string key_png;
  std::vector<std::string> steps;
  std::string out_dir;
};

int RunRdEval(const RdArgs& args) {
  const SemanticsDocument doc = LoadSemanticsDocument(args.semantics);
  const std::vector<std::uint8_t> png = ReadFileBytes(args.key_png);
  const Image key = DecodePng(png);
  if (key.width != doc.width || key.height != doc.height) {
    throw Error(ErrorCode::kDimensionMismatch, "key frame dimensions mismatch");
  }
  std::vector<QuantConfig> configs;
  for (const std::string& s : args.steps) configs.push_back(ParseSteps(s));
  if (configs.empty()) {
    for (double scale : {0.5, 1.0, 2.0, 4.0}) {
      configs.push_back(QuantConfig{}.Scaled(scale));
    }
  }
  const std::vector<RdPoint> rows = EvaluateRd(doc, png, configs);
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    const std::string csv = RdTableToCsv(rows);
    WriteFileBytes((fs::path(args.out_dir) / "rd.csv").string(),
                   std::span(reinterpret_cast<const std::uint8_t*>(csv.data()),
                             csv.size()));
    const std::string json = RdTableToJson(rows).dump(2) + "\n";
    WriteFileBytes((fs::path(args.out_dir) / "rd.json").string(),
                   std::span(reinterpret_cast<const std::uint8_t*>(json.data()),
                             json.size()));
  }
  PrintJson(RdTableToJson(rows));
  return 0;
}

int RunDumpTemplate(const std::string& shape_text) {
  std::array<double, kShapeDims> shape{};
  if (!shape_text.empty()) {
    std::stringstream ss(shape_text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
      if (k >= kShapeDims) {
        throw Error(ErrorCode::kValidation, "--shape takes at most 10 values");
      }
      shape[k++] = std::stod(item);
    }
  }
  PrintJson(TemplateToJson(BuildTemplate(shape)));
  return 0;
}

Service* g_service = nullptr;

void HandleSignal(int) {
  if (g_service) g_service->Stop();
}

int RunServe(const ServiceOptions& options) {
  Service service(options);
  g_service = &service;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::cerr << "ihvc serve: listening on " << options.host << ":"
            << options.port << std::endl;
  service.Run();
  g_service = nullptr;
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Interactive semantic human-video codec"};
  app.require_subcommand(1);

  EncodeArgs encode;
  auto* encode_cmd = app.add_subcommand("encode", "Encode semantics + key PNG into .ihvc");
  encode_cmd->add_option("semantics", encode.semantics, "Semantics JSON")->required();
  encode_cmd->add_option("key", encode.key_png, "Key-reference PNG")->required();
  encode_cmd->add_option("-o,--output", encode.output, "Output .ihvc")->required();
  encode_cmd->add_option("--steps", encode.steps, "Quant steps pose,trans,rot,loc");
  encode_cmd->add_flag("--include-key", encode.include_key, "Report kbps including the key");

  DecodeArgs decode;
  auto* decode_cmd = app.add_subcommand("decode", "Decode .ihvc back to semantics JSON");
  decode_cmd->add_option("input", decode.input, "Input .ihvc")->required();
  decode_cmd->add_option("-o,--output", decode.output, "Semantics JSON to write");
  decode_cmd->add_option("--key-png", decode.key_png, "Write the key payload here");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Reconstruct frames as PNG");
  render_cmd->add_option("input", render.input, "Input .ihvc")->required();
  render_cmd->add_option("--out", render.out_dir, "Output directory")->required();
  render_cmd->add_option("--edits", render.edits, "Edit script JSON");
  render_cmd->add_option("--dump-mesh", render.mesh_dir, "Write posed meshes as OBJ here");
  render_cmd->add_option("--dump-motion", render.motion_dir,
                         "Write flow (.flow, f32 planes) and occlusion (.pgm) here");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic sequence");
  synth_cmd->add_option("preset", synth.preset, "nod_head|wave_arms|walk_sway|random_smooth")
      ->required();
  synth_cmd->add_option("--frames", synth.options.frames, "Inter frame count");
  synth_cmd->add_option("--fps", synth.options.fps, "Frame rate");
  synth_cmd->add_option("--seed", synth.options.seed, "Random seed");
  synth_cmd->add_option("--width", synth.options.width, "Width px");
  synth_cmd->add_option("--height", synth.options.height, "Height px");
  synth_cmd->add_option("--amplitude", synth.options.amplitude,
                        "random_smooth peak amplitude (rad)");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory");

  RdArgs rd;
  auto* rd_cmd = app.add_subcommand("rd-eval", "Rate-distortion sweep over quant configs");
  rd_cmd->add_option("semantics", rd.semantics, "Semantics JSON")->required();
  rd_cmd->add_option("key", rd.key_png, "Key-reference PNG")->required();
  rd_cmd->add_option("--steps", rd.steps, "Quant steps pose,trans,rot,loc (repeatable)")
      ->take_all();
  rd_cmd->add_option("--out", rd.out_dir, "Directory for rd.csv and rd.json");

  std::string shape;
  auto* template_cmd = app.add_subcommand("dump-template", "Print the body template tables");
  template_cmd->add_option("--shape", shape, "Comma-separated shape coefficients");

  ServiceOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the interactive editing service");
  serve_cmd->add_option("--port", serve.port, "Listen port");
  serve_cmd->add_option("--host", serve.host, "Listen address");
  serve_cmd->add_option("--ui-dir", serve.ui_dir, "Static UI bundle to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*encode_cmd) return RunEncode(encode);
    if (*decode_cmd) return RunDecode(decode);
    if (*render_cmd) return RunRender(render);
    if (*synth_cmd) return RunSynth(synth);
    if (*rd_cmd) return RunRdEval(rd);
    if (*template_cmd) return RunDumpTemplate(shape);
    if (*serve_cmd) return RunServe(serve);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorCodeName(e.code()) << "): " << e.what()
              << std::endl;
    return e.code() == ErrorCode::kIo ? 1 : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace ihvc

int main(int argc, char** argv) { return ihvc::Main(argc, argv); }
