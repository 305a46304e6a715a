#include "firstint/io_json.hpp"

namespace firstint {

ParsedSystem parse_system_document(const std::string& text) {
  ParsedSystem out;
  try {
    out.document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!out.document.is_object()) throw InvalidSystem("input document must be an object");
  for (const char* key : {"n", "ring", "N", "B", "f1", "f2"})
    if (!out.document.contains(key))
      throw InvalidSystem(std::string("missing required field \"") + key + "\"");
  if (!out.document["ring"].is_string())
    throw InvalidSystem("\"ring\" must be one of \"Q\", \"Qi\", \"Qt\"");
  auto ring = ring_from_name(out.document["ring"].get<std::string>());
  if (!ring)
    throw InvalidSystem("unknown ring \"" + out.document["ring"].get<std::string>() +
                        "\"; expected \"Q\", \"Qi\" or \"Qt\"");
  out.ring = *ring;
  return out;
}

json certificate_to_json(const ResonanceCertificate& cert) {
  json j;
  j["N_checked"] = cert.n_checked;
  j["min_divisor"] = {{"value", cert.min_divisor_text},
                      {"magnitude", cert.min_magnitude.str()},
                      {"witness_mtilde", cert.min_witness}};
  return j;
}

}  // namespace firstint
