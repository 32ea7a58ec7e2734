package demo.web;

public class SecurityFilter {

    private static void addUserToSession(final HttpServletRequest request) {
        request.getSession();
    }

    private void doFilter(final ServletRequest request, final ServletResponse response, final FilterChain chain) throws IOException, ServletException {
        chain.doFilter(request, response);
    }
}
