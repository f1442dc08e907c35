/* Grid spacing helpers for the plotter. */

double cell_offset(double hi, double lo, int steps) {
    double dh = (hi - lo) / steps; /* vertical delta per cell */
    return dh * 0.5;
}
