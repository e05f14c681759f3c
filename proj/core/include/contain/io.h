#pragma once

#include <string>

#include "contain/certificate.h"
#include "contain/criteria.h"
#include "contain/pencil.h"

namespace contain {

// Pencil:      {"n": int, "k": int, "mats": [[k*k floats row-major], ...]}
// Polyhedron:  {"type": "h-polyhedron", "offsets": [...], "normals": [[...], ...]}
// Polytope:    {"type": "v-polytope", "vertices": [[...], ...]}
// Certificate: {"k", "l", "variant", "C": [kl*kl floats], "slacks": [[l*l], ...],
//               "provenance"}
// Parse failures throw ParseError with the byte offset in the message.

LinearPencil PencilFromJson(const std::string& text);
std::string PencilToJson(const LinearPencil& p);

Body BodyFromJson(const std::string& text);
std::string BodyToJson(const Body& body);

ChoiCertificate CertificateFromJson(const std::string& text);
std::string CertificateToJson(const ChoiCertificate& cert);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& text);

}  // namespace contain
