#include "nullseries/errors.hpp"

namespace nullseries {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::range: return "range";
        case ErrorKind::contract: return "contract";
        case ErrorKind::value: return "value";
        case ErrorKind::capability: return "capability";
        case ErrorKind::resolution: return "resolution";
        case ErrorKind::shape: return "shape";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::triviality: return "triviality";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

}  // namespace nullseries
