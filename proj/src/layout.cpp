#include "holo/layout.hpp"

#include <cmath>

namespace holo {

void Layout::validate() const {
    const int ns = specimen.rows;
    if (ns < 1 || specimen.cols != ns)
        throw GeometryError("specimen must be a nonempty square image");
    if (reference.rows != ns || reference.cols != ns)
        throw GeometryError("reference must match specimen size");
    if (gap < 0) throw GeometryError("gap width must be nonnegative");
    if (os_x < 1.0 || os_y < 1.0) throw GeometryError("oversampling factors must be >= 1");
    if (m1() < composite_rows() || m2() < composite_cols())
        throw GeometryError("detector smaller than composite object");
    if (!all_finite(specimen) || !all_finite(reference))
        throw GeometryError("layout images must be finite");
}

namespace {

ImageGrid embed(const Layout& layout, bool with_specimen, bool with_reference) {
    layout.validate();
    const int n = layout.n();
    ImageGrid out(n, layout.composite_cols());
    const int ref_col0 = n + layout.gap;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (with_specimen) out.at(r, c) = layout.specimen.at(r, c);
            if (with_reference) out.at(r, ref_col0 + c) = layout.reference.at(r, c);
        }
    }
    return out;
}

}  // namespace

ImageGrid compose(const Layout& layout) { return embed(layout, true, true); }
ImageGrid embed_specimen_only(const Layout& layout) { return embed(layout, true, false); }
ImageGrid embed_reference_only(const Layout& layout) { return embed(layout, false, true); }

}  // namespace holo
