#include "bifractal/domain.hpp"

#include "bifractal/errors.hpp"

#include <cmath>
#include <string>

namespace bifractal {

void validate(const Interval& i)
{
    if (!std::isfinite(i.lo) || !std::isfinite(i.hi) || !(i.lo < i.hi)) {
        throw ArgumentError("interval endpoints must be finite with lo < hi, got [" + std::to_string(i.lo) + ", " +
                            std::to_string(i.hi) + "]");
    }
}

void validate(const Rect& r)
{
    validate(r.x);
    validate(r.y);
}

} // namespace bifractal
